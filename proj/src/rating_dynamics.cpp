#include "crowdrate/rating_dynamics.hpp"

#include "crowdrate/errors.hpp"

namespace crowdrate::rating {

NextRating ratingUpdateLaw(Rating theta, Strategy observed, const DesignParams& design) {
  const bool compliant = observed == Strategy::CN;
  if (theta == Rating::Good) {
    return compliant ? NextRating{0.0, 1.0} : NextRating{design.beta, 1.0 - design.beta};
  }
  return compliant ? NextRating{1.0 - design.alpha, design.alpha} : NextRating{1.0, 0.0};
}

TransitionKernel kernel(Strategy intended, const DesignParams& design, const IntrinsicParams& p) {
  double seenCompliant = 0.0;
  switch (intended) {
    case Strategy::CN:
      seenCompliant = errorAggregate(p).zeta;
      break;
    case Strategy::CA:
      // Stage 1 observed correctly, stage-2 attack flipped to N.
      seenCompliant = p.eps2 - p.eps1 * p.eps2;
      break;
    default:
      throw UnsupportedStrategy("no transition kernel defined for intended " +
                                std::string(name(intended)));
  }
  const double seenDeviating = 1.0 - seenCompliant;
  const double demote = design.beta * seenDeviating;
  const double promote = design.alpha * seenCompliant;
  TransitionKernel k{};
  k.rows[index(Rating::Good)] = {demote, 1.0 - demote};
  k.rows[index(Rating::Bad)] = {1.0 - promote, promote};
  return k;
}

StationaryDistribution evolve(const StationaryDistribution& eta, const DesignParams& design,
                              const IntrinsicParams& p) {
  const auto k = kernel(Strategy::CN, design, p);
  return {k(Rating::Bad, Rating::Good) * eta.eta1 + k(Rating::Bad, Rating::Bad) * eta.eta0,
          k(Rating::Good, Rating::Good) * eta.eta1 + k(Rating::Good, Rating::Bad) * eta.eta0};
}

StationaryDistribution stationary(const DesignParams& design, const IntrinsicParams& p) {
  if (design.alpha == 0.0 && design.beta == 0.0) {
    throw DegenerateChain("stationary distribution undefined for alpha = beta = 0");
  }
  const auto [agg, zeta] = errorAggregate(p);
  const double down = design.beta * agg;
  const double up = design.alpha * zeta;
  if (down + up == 0.0) {
    throw DegenerateChain("stationary distribution undefined: no rating transitions");
  }
  return {down / (down + up), up / (down + up)};
}

StationaryDistribution powerIterate(StationaryDistribution start, const DesignParams& design,
                                    const IntrinsicParams& p, int steps) {
  for (int t = 0; t < steps; ++t) start = evolve(start, design, p);
  return start;
}

}  // namespace crowdrate::rating

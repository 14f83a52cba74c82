#include "crowdrate/requester.hpp"

#include <cmath>

#include "crowdrate/errors.hpp"

namespace crowdrate::requester {

double perWinnerUtility(Rating theta, const DesignParams& design, const IntrinsicParams& p) {
  const auto [agg, zeta] = errorAggregate(p);
  const double price = design.price(theta);
  return zeta * (1.0 - price) + agg * (-price);
}

double pairUtility(Rating theta, Rating opponent, const DesignParams& design,
                   const rating::StationaryDistribution& eta, const IntrinsicParams& p) {
  return eta.of(theta) * eta.of(opponent) *
         (0.5 * perWinnerUtility(theta, design, p) + 0.5 * perWinnerUtility(opponent, design, p));
}

SocialUtility socialUtility(const DesignParams& design, const IntrinsicParams& p) {
  const auto eta = rating::stationary(design, p);
  double sum = 0.0;
  for (Rating a : {Rating::Bad, Rating::Good}) {
    for (Rating b : {Rating::Bad, Rating::Good}) sum += pairUtility(a, b, design, eta, p);
  }
  const auto [agg, zeta] = errorAggregate(p);
  const double closed =
      zeta - (design.beta * design.gamma0 * agg + design.alpha * design.gamma1 * zeta) /
                 (design.beta * agg + design.alpha * zeta);
  return {sum, closed};
}

double kFour(const DesignParams& design, const IntrinsicParams& p, double utility) {
  const auto [agg, zeta] = errorAggregate(p);
  const double den = agg * (utility - zeta);
  if (std::abs(den) < 1e-15) throw DegenerateDenominator("kFour: utility equals zeta");
  return zeta * ((zeta - design.gamma1) - utility) / den;
}

double utilitySlopeInK4(const DesignParams& design, const IntrinsicParams& p, double utility) {
  const auto [agg, zeta] = errorAggregate(p);
  if (design.gamma1 == 0.0) throw DegenerateDenominator("utilitySlopeInK4: gamma1 = 0");
  return agg * (utility - zeta) * (utility - zeta) / (zeta * design.gamma1);
}

}  // namespace crowdrate::requester

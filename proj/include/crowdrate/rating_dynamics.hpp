#pragma once

#include <array>

#include "crowdrate/domain.hpp"

namespace crowdrate::rating {

/// Probability pair over the next rating.
struct NextRating {
  double bad;
  double good;

  [[nodiscard]] double of(Rating r) const { return r == Rating::Good ? good : bad; }
};

/// Long-run (or per-period) fractions of 0- and 1-rated workers.
struct StationaryDistribution {
  double eta0;
  double eta1;

  [[nodiscard]] double of(Rating r) const { return r == Rating::Good ? eta1 : eta0; }
};

/// Rating scheme applied to the strategy the platform observes: observed CN
/// promotes a 0-rated worker with probability alpha and keeps a 1-rated one;
/// anything else demotes a 1-rated worker with probability beta and keeps a
/// 0-rated one.
NextRating ratingUpdateLaw(Rating theta, Strategy observed, const DesignParams& design);

/// Rows indexed by current rating.
struct TransitionKernel {
  std::array<NextRating, 2> rows;

  [[nodiscard]] double operator()(Rating next, Rating current) const {
    return rows[index(current)].of(next);
  }
};

/// Kernel for an intended strategy after observation errors. Only CN and CA
/// are defined; SN and SA throw UnsupportedStrategy.
TransitionKernel kernel(Strategy intended, const DesignParams& design, const IntrinsicParams& p);

/// One step of the compliant population dynamics.
StationaryDistribution evolve(const StationaryDistribution& eta, const DesignParams& design,
                              const IntrinsicParams& p);

/// Closed form. Throws DegenerateChain when alpha = beta = 0.
StationaryDistribution stationary(const DesignParams& design, const IntrinsicParams& p);

/// Repeated evolve from `start`.
StationaryDistribution powerIterate(StationaryDistribution start, const DesignParams& design,
                                    const IntrinsicParams& p, int steps);

}  // namespace crowdrate::rating

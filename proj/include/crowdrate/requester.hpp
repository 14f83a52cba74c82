#pragma once

#include "crowdrate/domain.hpp"
#include "crowdrate/rating_dynamics.hpp"

namespace crowdrate::requester {

/// Expected one-period utility when the winner holds rating theta: the task is
/// delivered with probability zeta and the winner's price is always paid.
double perWinnerUtility(Rating theta, const DesignParams& design, const IntrinsicParams& p);

/// Contribution of a (theta, opponent theta) match; each worker wins with
/// probability 1/2.
double pairUtility(Rating theta, Rating opponent, const DesignParams& design,
                   const rating::StationaryDistribution& eta, const IntrinsicParams& p);

struct SocialUtility {
  double enumerated;  // sum over the four rating pairs
  double closedForm;
  [[nodiscard]] double residual() const { return enumerated - closedForm; }
};

/// Throws DegenerateChain when alpha = beta = 0.
SocialUtility socialUtility(const DesignParams& design, const IntrinsicParams& p);

/// Slope of the level set {beta = K4 alpha} on which social utility equals
/// `utility` (gamma0 = 0). Throws DegenerateDenominator when utility == zeta.
double kFour(const DesignParams& design, const IntrinsicParams& p, double utility);

/// dU/dK4 at the given utility level.
double utilitySlopeInK4(const DesignParams& design, const IntrinsicParams& p, double utility);

}  // namespace crowdrate::requester

#pragma once

#include <array>

#include "crowdrate/domain.hpp"
#include "crowdrate/rating_dynamics.hpp"

// One-period worker payoffs under perfect and imperfect monitoring.
namespace crowdrate::payoffs {

/// Focal worker's payoff for each (own, opponent) realized strategy pair.
/// entry(x, y) = prizeShare(x, y) * gamma + constant(x, y); prizeShare is 1
/// when the focal worker takes the prize, 1/2 on a tie and 0 when it loses.
class PayoffMatrix {
 public:
  PayoffMatrix(Worker w, double gamma, const IntrinsicParams& p);

  [[nodiscard]] double operator()(Strategy own, Strategy opp) const {
    return prizeShare(own, opp) * gamma_ + constant(own, opp);
  }
  [[nodiscard]] double prizeShare(Strategy own, Strategy opp) const {
    return share_[index(own)][index(opp)];
  }
  [[nodiscard]] double constant(Strategy own, Strategy opp) const {
    return constant_[index(own)][index(opp)];
  }
  [[nodiscard]] double gamma() const { return gamma_; }

 private:
  double gamma_;
  std::array<std::array<double, 4>, 4> share_{};
  std::array<std::array<double, 4>, 4> constant_{};
};

/// Distribution over realized strategies (CN, CA, SN, SA) for an intended one:
/// eps1 flips the stage-1 action, eps2 the stage-2 action, independently.
using MixVector = std::array<double, 4>;

MixVector mixVector(Strategy intended, const IntrinsicParams& p);

/// mix(intended) * V * mix(opponentIntended)^T with the focal worker's prize gamma.
double expectedPayoff(Worker w, Strategy intended, Strategy opponentIntended, double gamma,
                      const IntrinsicParams& p);

/// Stationary-weighted payoff of a theta-rated focal worker against a compliant
/// opponent. The prize is the focal worker's own price, so the opponent-rating
/// average leaves the value unchanged; it is kept to mirror the reduction.
double ratingPayoff(Worker w, Strategy intended, Rating theta, const DesignParams& design,
                    const rating::StationaryDistribution& eta, const IntrinsicParams& p);

/// v_CN^i(gamma) and v_CA^i(gamma), the two quantities every constraint uses.
inline double compliant(Worker w, double gamma, const IntrinsicParams& p) {
  return expectedPayoff(w, Strategy::CN, Strategy::CN, gamma, p);
}
inline double attacking(Worker w, double gamma, const IntrinsicParams& p) {
  return expectedPayoff(w, Strategy::CA, Strategy::CN, gamma, p);
}

struct DominanceReport {
  double cn;
  double ca;
  double sn;
  double sa;
  bool caDominates;  // CA >= SN and CA >= SA
};

/// Re-checks, at a given prize, whether CA is the best one-period deviation.
DominanceReport deviationDominance(Worker w, double gamma, const IntrinsicParams& p);

}  // namespace crowdrate::payoffs

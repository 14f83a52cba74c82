#pragma once

#include <array>
#include <string>
#include <vector>

#include "crowdrate/domain.hpp"

namespace crowdrate::incentives {

/// Weak inequalities are compared with this slack throughout.
inline constexpr double kMarginTolerance = 1e-9;

/// Discounted long-term utilities of a compliant worker by current rating.
struct LongTermUtilities {
  double vInf0;
  double vInf1;

  [[nodiscard]] double of(Rating r) const { return r == Rating::Good ? vInf1 : vInf0; }
};

/// Exact 2x2 solve of v = v_CN(gamma_theta) + delta * P_CN v.
LongTermUtilities longTermUtilities(const DesignParams& design, const IntrinsicParams& p, Worker w);

/// `steps` Bellman backups from zero; used as an independent check of the solve.
LongTermUtilities bellmanIterate(const DesignParams& design, const IntrinsicParams& p, Worker w,
                                 int steps);

/// vInf1 - vInf0 from the closed-form ratio.
double ratingGap(const DesignParams& design, const IntrinsicParams& p, Worker w);

/// Value of playing CA once at rating theta and complying afterwards.
double deviationValue(Rating theta, const DesignParams& design, const IntrinsicParams& p, Worker w);

struct WorkerSustainability {
  Worker worker;
  double gap;
  // Compliance minus one-shot deviation, in utility units:
  // delta * alpha * W * gap - (v_CA(g0) - v_CN(g0)) and the beta analogue.
  double deviationMargin0;
  double deviationMargin1;
  // gap minus each threshold; +-inf when the divisor vanishes.
  double thresholdMargin0;
  double thresholdMargin1;
  // gap minus the combined max-form bound.
  double combinedMargin;
  double vInf0;
  double vInf1;

  [[nodiscard]] bool incentiveCompatible() const {
    return deviationMargin0 >= -kMarginTolerance && deviationMargin1 >= -kMarginTolerance;
  }
  [[nodiscard]] bool participates() const {
    return vInf0 >= -kMarginTolerance && vInf1 >= -kMarginTolerance;
  }
};

struct SustainabilityReport {
  std::array<WorkerSustainability, 2> workers;
  bool sustainable;        // the deviation constraints hold for both workers
  bool participation;      // long-term utilities are nonnegative for both
  bool combinedConsistent; // the max-form bound agrees with the per-rating bounds

  [[nodiscard]] bool feasible() const { return sustainable && participation; }
  /// worker,constraint,margin rows.
  [[nodiscard]] std::string csv() const;
};

SustainabilityReport isSustainable(const DesignParams& design, const IntrinsicParams& p);

/// v_CN and v_CA at the two prices of a design.
struct OnePeriodPayoffs {
  double compliant0;
  double compliant1;
  double attack0;
  double attack1;
};

OnePeriodPayoffs onePeriodPayoffs(const DesignParams& design, const IntrinsicParams& p, Worker w);

/// Same evaluation with the one-period payoffs supplied, for sweeps that reuse
/// them across many (alpha, beta).
SustainabilityReport isSustainable(const DesignParams& design, const IntrinsicParams& p,
                                   const std::array<OnePeriodPayoffs, 2>& payoffs);

/// Slope/intercept pairs of the three per-worker constraints in the (alpha,
/// beta) plane at gamma0 = 0:
///   beta >= K1 alpha + B1   (rating-0 deviation),
///   beta >= K2 alpha + B2   (rating-1 deviation),
///   beta <= K3 alpha + B3   (rating-0 participation).
struct ConstraintCoefficients {
  Worker worker;
  double K1;
  double B1;
  double K2;
  double B2;
  double K3;
  double B3;
  /// False when the K2 denominator is nonpositive: no beta in (0,1] satisfies
  /// the rating-1 deviation constraint at this gamma1.
  bool ratingOneSatisfiable;
};

/// Throws DegenerateDenominator when a denominator is below 1e-12 in magnitude.
ConstraintCoefficients coefficients(double gamma1, const IntrinsicParams& p, Worker w);

/// Feasible (alpha, beta) set for both workers at gamma0 = 0, gamma1 fixed.
struct FeasibilityBand {
  double gamma1;
  double lowerSlope;
  double lowerIntercept;
  double upperSlope;
  double upperIntercept;
  Worker lowerWorker;
  Worker upperWorker;
  bool withK1;
  double k1Slope;
  double k1Intercept;
  bool empty;

  [[nodiscard]] double lower(double alpha) const { return lowerSlope * alpha + lowerIntercept; }
  [[nodiscard]] double upper(double alpha) const { return upperSlope * alpha + upperIntercept; }
  /// (alpha, beta) in (0,1]^2 and between the boundaries, with kMarginTolerance slack.
  [[nodiscard]] bool contains(double alpha, double beta) const;
};

/// Degenerate or unsatisfiable coefficients yield an empty band.
FeasibilityBand feasibilityBand(double gamma1, const IntrinsicParams& p, bool withK1 = false);

}  // namespace crowdrate::incentives

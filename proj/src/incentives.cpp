#include "crowdrate/incentives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "crowdrate/errors.hpp"
#include "crowdrate/monitored_payoffs.hpp"
#include "crowdrate/rating_dynamics.hpp"
#include "format.hpp"

namespace crowdrate::incentives {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDenominatorGuard = 1e-12;

// Compliant one-period payoffs by rating.
std::array<double, 2> compliantPayoffs(const DesignParams& design, const IntrinsicParams& p, Worker w) {
  return {payoffs::compliant(w, design.gamma0, p), payoffs::compliant(w, design.gamma1, p)};
}

double threshold(double gain, double divisor) {
  if (divisor > 0.0) return gain / divisor;
  if (gain > 0.0) return kInf;
  if (gain < 0.0) return -kInf;
  return 0.0;
}

// (I - delta P) x = v with rows ordered (0, 1), by Cramer's rule.
LongTermUtilities solveFixedPoint(double v0, double v1, const rating::TransitionKernel& k, double dl) {
  const double a00 = 1.0 - dl * k(Rating::Bad, Rating::Bad);
  const double a01 = -dl * k(Rating::Good, Rating::Bad);
  const double a10 = -dl * k(Rating::Bad, Rating::Good);
  const double a11 = 1.0 - dl * k(Rating::Good, Rating::Good);
  const double det = a00 * a11 - a01 * a10;
  return {(v0 * a11 - a01 * v1) / det, (a00 * v1 - a10 * v0) / det};
}

}  // namespace

LongTermUtilities longTermUtilities(const DesignParams& design, const IntrinsicParams& p, Worker w) {
  const auto v = compliantPayoffs(design, p, w);
  return solveFixedPoint(v[0], v[1], rating::kernel(Strategy::CN, design, p), p.delta);
}

LongTermUtilities bellmanIterate(const DesignParams& design, const IntrinsicParams& p, Worker w,
                                 int steps) {
  const auto v = compliantPayoffs(design, p, w);
  const auto k = rating::kernel(Strategy::CN, design, p);
  LongTermUtilities x{0.0, 0.0};
  for (int n = 0; n < steps; ++n) {
    x = {v[0] + p.delta * (k(Rating::Bad, Rating::Bad) * x.vInf0 + k(Rating::Good, Rating::Bad) * x.vInf1),
         v[1] + p.delta * (k(Rating::Bad, Rating::Good) * x.vInf0 + k(Rating::Good, Rating::Good) * x.vInf1)};
  }
  return x;
}

double ratingGap(const DesignParams& design, const IntrinsicParams& p, Worker w) {
  const auto v = compliantPayoffs(design, p, w);
  const auto [agg, zeta] = errorAggregate(p);
  return (v[1] - v[0]) / (1.0 - p.delta * (1.0 - design.beta * agg - design.alpha * zeta));
}

double deviationValue(Rating theta, const DesignParams& design, const IntrinsicParams& p, Worker w) {
  const auto lt = longTermUtilities(design, p, w);
  const auto k = rating::kernel(Strategy::CA, design, p);
  return payoffs::attacking(w, design.price(theta), p) +
         p.delta * (k(Rating::Good, theta) * lt.vInf1 + k(Rating::Bad, theta) * lt.vInf0);
}

OnePeriodPayoffs onePeriodPayoffs(const DesignParams& design, const IntrinsicParams& p, Worker w) {
  return {payoffs::compliant(w, design.gamma0, p), payoffs::compliant(w, design.gamma1, p),
          payoffs::attacking(w, design.gamma0, p), payoffs::attacking(w, design.gamma1, p)};
}

SustainabilityReport isSustainable(const DesignParams& design, const IntrinsicParams& p) {
  return isSustainable(design, p, {onePeriodPayoffs(design, p, Worker::One),
                                   onePeriodPayoffs(design, p, Worker::Two)});
}

SustainabilityReport isSustainable(const DesignParams& design, const IntrinsicParams& p,
                                   const std::array<OnePeriodPayoffs, 2>& payoffs) {
  SustainabilityReport r{};
  r.sustainable = true;
  r.participation = true;
  r.combinedConsistent = true;
  const double W = detectionMargin(p);
  const auto k = rating::kernel(Strategy::CN, design, p);
  for (Worker w : kWorkers) {
    auto& ws = r.workers[index(w)];
    const auto& v = payoffs[index(w)];
    ws.worker = w;
    const double gain0 = v.attack0 - v.compliant0;
    const double gain1 = v.attack1 - v.compliant1;
    const auto lt = solveFixedPoint(v.compliant0, v.compliant1, k, p.delta);
    ws.gap = lt.vInf1 - lt.vInf0;
    ws.vInf0 = lt.vInf0;
    ws.vInf1 = lt.vInf1;
    ws.deviationMargin0 = p.delta * design.alpha * W * ws.gap - gain0;
    ws.deviationMargin1 = p.delta * design.beta * W * ws.gap - gain1;
    const double t0 = threshold(gain0, p.delta * design.alpha * W);
    const double t1 = threshold(gain1, p.delta * design.beta * W);
    ws.thresholdMargin0 = ws.gap - t0;
    ws.thresholdMargin1 = ws.gap - t1;
    // max{gain0/alpha, gain1/beta} / (delta W)
    const double combined = threshold(std::max(threshold(gain0, design.alpha), threshold(gain1, design.beta)),
                                      p.delta * W);
    ws.combinedMargin = ws.gap - combined;
    if (!ws.incentiveCompatible()) r.sustainable = false;
    if (!ws.participates()) r.participation = false;
    const bool combinedHolds = ws.combinedMargin >= -kMarginTolerance;
    if (combinedHolds != ws.incentiveCompatible() && std::isfinite(combined)) {
      r.combinedConsistent = false;
    }
  }
  return r;
}

std::string SustainabilityReport::csv() const {
  std::ostringstream os;
  os << "worker,constraint,margin\n";
  for (const auto& ws : workers) {
    const auto id = index(ws.worker) + 1;
    auto row = [&](const char* constraint, double m) {
      os << id << ',' << constraint << ',' << fmtNumber(m) << '\n';
    };
    row("deviation_rating0", ws.deviationMargin0);
    row("deviation_rating1", ws.deviationMargin1);
    row("threshold_rating0", ws.thresholdMargin0);
    row("threshold_rating1", ws.thresholdMargin1);
    row("combined_bound", ws.combinedMargin);
    row("participation_rating0", ws.vInf0);
    row("participation_rating1", ws.vInf1);
  }
  return os.str();
}

ConstraintCoefficients coefficients(double gamma1, const IntrinsicParams& p, Worker w) {
  const auto [agg, zeta] = errorAggregate(p);
  const double W = detectionMargin(p);
  const double dl = p.delta;
  const double cn1 = payoffs::compliant(w, gamma1, p);
  const double cn0 = payoffs::compliant(w, 0.0, p);
  const double gain1 = payoffs::attacking(w, gamma1, p) - cn1;
  const double gain0 = payoffs::attacking(w, 0.0, p) - cn0;
  const double rise = cn1 - cn0;

  auto guard = [&](double den, const char* what) {
    if (std::abs(den) < kDenominatorGuard) {
      throw DegenerateDenominator(std::string("coefficients: vanishing denominator in ") + what);
    }
  };
  guard(agg * gain0, "K1");
  guard(dl * agg, "B1/B3");
  guard(agg * cn0, "K3");
  const double den2 = W * rise - agg * gain1;
  guard(den2, "K2/B2");

  ConstraintCoefficients c{};
  c.worker = w;
  c.K1 = (W * rise - zeta * gain0) / (agg * gain0);
  c.B1 = -(1.0 - dl) / (dl * agg);
  c.K2 = zeta * gain1 / den2;
  c.B2 = (1.0 - dl) * gain1 / (dl * den2);
  c.K3 = -(zeta * cn1) / (agg * cn0);
  c.B3 = (dl - 1.0) / (dl * agg);
  c.ratingOneSatisfiable = den2 > 0.0;
  return c;
}

bool FeasibilityBand::contains(double alpha, double beta) const {
  if (empty) return false;
  if (!(alpha > 0.0 && alpha <= 1.0 && beta > 0.0 && beta <= 1.0)) return false;
  if (beta < lower(alpha) - kMarginTolerance) return false;
  if (beta > upper(alpha) + kMarginTolerance) return false;
  if (withK1 && beta < k1Slope * alpha + k1Intercept - kMarginTolerance) return false;
  return true;
}

FeasibilityBand feasibilityBand(double gamma1, const IntrinsicParams& p, bool withK1) {
  FeasibilityBand band{};
  band.gamma1 = gamma1;
  band.withK1 = withK1;
  std::array<ConstraintCoefficients, 2> cs{};
  try {
    cs = {coefficients(gamma1, p, Worker::One), coefficients(gamma1, p, Worker::Two)};
  } catch (const DegenerateDenominator&) {
    band.empty = true;
    return band;
  }
  if (!cs[0].ratingOneSatisfiable || !cs[1].ratingOneSatisfiable) {
    band.empty = true;
    return band;
  }
  // B2 is proportional to K2 with a worker-independent factor, and B3 does not
  // depend on the worker, so single lines dominate on alpha >= 0.
  const auto& lo = cs[0].K2 >= cs[1].K2 ? cs[0] : cs[1];
  const auto& hi = cs[0].K3 <= cs[1].K3 ? cs[0] : cs[1];
  band.lowerSlope = lo.K2;
  band.lowerIntercept = lo.B2;
  band.lowerWorker = lo.worker;
  band.upperSlope = hi.K3;
  band.upperIntercept = hi.B3;
  band.upperWorker = hi.worker;
  const auto& k1 = cs[0].K1 >= cs[1].K1 ? cs[0] : cs[1];  // B1 is shared
  band.k1Slope = k1.K1;
  band.k1Intercept = k1.B1;

  // Nonempty iff some alpha in (0,1] has max(lower, 0) < min(upper, 1) up to
  // tolerance. Both sides are piecewise linear, so checking alpha -> 0+, 1 and
  // the crossings of the four lines is enough.
  std::vector<double> candidates{1e-12, 1.0};
  auto crossing = [&](double k1s, double b1, double k2s, double b2) {
    if (k1s != k2s) {
      const double a = (b2 - b1) / (k1s - k2s);
      if (a > 0.0 && a <= 1.0) candidates.push_back(a);
    }
  };
  crossing(band.lowerSlope, band.lowerIntercept, band.upperSlope, band.upperIntercept);
  crossing(band.upperSlope, band.upperIntercept, 0.0, 1.0);
  crossing(band.upperSlope, band.upperIntercept, 0.0, 0.0);
  crossing(band.lowerSlope, band.lowerIntercept, 0.0, 1.0);
  crossing(band.lowerSlope, band.lowerIntercept, 0.0, 0.0);
  band.empty = true;
  for (double a : candidates) {
    const double top = std::min(band.upper(a), 1.0);
    double bottom = band.lower(a);
    if (withK1) bottom = std::max(bottom, band.k1Slope * a + band.k1Intercept);
    if (top > 0.0 && top >= bottom - kMarginTolerance) {
      band.empty = false;
      break;
    }
  }
  return band;
}

}  // namespace crowdrate::incentives

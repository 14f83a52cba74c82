#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "crowdrate/domain.hpp"
#include "crowdrate/incentives.hpp"

namespace crowdrate::designer {

struct DesignerConfig {
  int gammaGridResolution = 100;   // gamma1 in {1/m, ..., 1}
  double tolerance = 1e-9;
  int oracleGridResolution = 100;  // alpha, beta, gamma1 in {1/r, ..., 1}
};

/// Throws DomainError unless m >= 10, r >= 1 and tolerance in (0, 1e-6].
void validate(const DesignerConfig& config);

/// Which edge of the unit square the optimum sits on.
enum class CaseId { BetaOne, AlphaOne, None };

std::string_view name(CaseId id);

struct CaseOutcome {
  CaseId id = CaseId::None;
  bool feasible = false;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma1 = 0.0;
  double utility = 0.0;          // case closed form
  double utilityDirect = 0.0;      // social utility at the substituted point
  Worker bindingWorker = Worker::One;
  std::vector<double> feasibleGammas;
};

struct DesignOutcome {
  DesignParams design{};
  double utility = 0.0;
  CaseId caseId = CaseId::None;
  bool feasible = false;
  std::array<CaseOutcome, 2> cases{};  // [BetaOne, AlphaOne]
  std::optional<incentives::SustainabilityReport> certificate;

  [[nodiscard]] std::string keyValueBlock(const IntrinsicParams& p) const;
  [[nodiscard]] std::string csvRow(const IntrinsicParams& p) const;
};

std::string csvHeader();

/// Best point of one case over the gamma1 grid (gamma0 = 0).
CaseOutcome caseOptimum(CaseId id, const IntrinsicParams& p, const DesignerConfig& config);

/// Both cases, larger utility wins; ties favour smaller gamma1, then BetaOne.
/// Returns an infeasible outcome instead of throwing.
DesignOutcome solve(const IntrinsicParams& p, const DesignerConfig& config);

/// As solve, but throws Infeasible when no gamma1 grid point works.
DesignOutcome optimize(const IntrinsicParams& p, const DesignerConfig& config);

/// Social utility of a case after substituting its (alpha, beta) vertex at
/// gamma1, written in terms of the binding worker's compliant payoffs.
double closedFormCaseUtility(CaseId id, double gamma1, const IntrinsicParams& p);

struct OraclePoint {
  bool feasible = false;
  DesignParams design{};
  double utility = 0.0;
  long long feasibleCount = 0;
};

/// Exhaustive search over the oracle grid, checking every constraint directly
/// at each point. gamma0 is held fixed and only gamma1 > gamma0 is considered.
OraclePoint bruteForceOracle(const IntrinsicParams& p, const DesignerConfig& config,
                             double gamma0 = 0.0);

struct FloorPriceReport {
  std::vector<std::pair<double, double>> curve;  // (gamma0, re-optimized utility), NaN if infeasible
  double bestGamma0 = 0.0;
  bool zeroIsOptimal = false;  // U(0) >= U(gamma0) - tolerance for all gamma0
};

/// Re-optimizes with the oracle at each gamma0 and compares against gamma0 = 0.
FloorPriceReport floorPriceCheck(const IntrinsicParams& p, const DesignerConfig& config,
                                 const std::vector<double>& gamma0Grid);

struct CrossCheck {
  double designerUtility;
  double oracleUtility;
  double slack;  // 2/r + 2/m
  bool agrees;
  std::string report;
};

/// Agreement of the designer with the oracle, two-sided within grid slack.
CrossCheck crossCheck(const DesignOutcome& outcome, const OraclePoint& oracle,
                      const DesignerConfig& config);

}  // namespace crowdrate::designer

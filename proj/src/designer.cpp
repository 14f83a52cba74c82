#include "crowdrate/designer.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "crowdrate/errors.hpp"
#include "crowdrate/monitored_payoffs.hpp"
#include "crowdrate/requester.hpp"
#include "format.hpp"

namespace crowdrate::designer {

void validate(const DesignerConfig& config) {
  if (config.gammaGridResolution < 10) throw DomainError("designer: gamma grid resolution must be >= 10");
  if (config.oracleGridResolution < 1) throw DomainError("designer: oracle grid resolution must be >= 1");
  if (!(config.tolerance > 0.0 && config.tolerance <= 1e-6)) {
    throw DomainError("designer: tolerance must lie in (0, 1e-6]");
  }
}

std::string_view name(CaseId id) {
  switch (id) {
    case CaseId::BetaOne: return "beta_one";
    case CaseId::AlphaOne: return "alpha_one";
    case CaseId::None: return "none";
  }
  return "none";
}

namespace {

struct CombinedLines {
  double K2, B2, K3, B3;
  Worker binding;  // owner of the upper (participation) line
};

std::optional<CombinedLines> combinedLines(double gamma1, const IntrinsicParams& p) {
  try {
    const auto a = incentives::coefficients(gamma1, p, Worker::One);
    const auto b = incentives::coefficients(gamma1, p, Worker::Two);
    if (!a.ratingOneSatisfiable || !b.ratingOneSatisfiable) return std::nullopt;
    const auto& lo = a.K2 >= b.K2 ? a : b;
    const auto& hi = a.K3 <= b.K3 ? a : b;
    return CombinedLines{lo.K2, lo.B2, hi.K3, hi.B3, hi.worker};
  } catch (const DegenerateDenominator&) {
    return std::nullopt;
  }
}

// Vertex of the case at gamma1 if its feasibility predicate holds. K2 == 0 is
// handled with the K2 < 0 branch.
std::optional<std::pair<double, double>> caseVertex(CaseId id, const CombinedLines& l) {
  if (id == CaseId::BetaOne) {
    if (!(l.K3 > 0.0)) return std::nullopt;
    const double alpha = (1.0 - l.B3) / l.K3;
    if (!(alpha > 0.0 && alpha < 1.0)) return std::nullopt;
    if (l.K2 > 0.0 && !((1.0 - l.B2) / l.K2 > alpha)) return std::nullopt;
    return std::make_pair(alpha, 1.0);
  }
  const double beta = l.K3 + l.B3;
  if (!(beta > 0.0 && beta <= 1.0)) return std::nullopt;
  if (l.K2 > 0.0 && !(l.K2 + l.B2 <= beta)) return std::nullopt;
  return std::make_pair(1.0, beta);
}

}  // namespace

CaseOutcome caseOptimum(CaseId id, const IntrinsicParams& p, const DesignerConfig& config) {
  validate(config);
  CaseOutcome out;
  out.id = id;
  const int m = config.gammaGridResolution;
  std::optional<std::pair<double, double>> chosen;
  CombinedLines chosenLines{};
  for (int k = 1; k <= m; ++k) {
    const double g = static_cast<double>(k) / m;
    const auto lines = combinedLines(g, p);
    if (!lines) continue;
    const auto vertex = caseVertex(id, *lines);
    if (!vertex) continue;
    out.feasibleGammas.push_back(g);
    // Utility falls with gamma1 on the beta = 1 edge and rises on alpha = 1.
    const bool take = id == CaseId::BetaOne ? !chosen : true;
    if (take) {
      chosen = vertex;
      chosenLines = *lines;
      out.gamma1 = g;
    }
  }
  if (!chosen) return out;
  out.feasible = true;
  out.alpha = chosen->first;
  out.beta = chosen->second;
  out.bindingWorker = chosenLines.binding;
  out.utility = closedFormCaseUtility(id, out.gamma1, p);
  out.utilityDirect = requester::socialUtility({out.alpha, out.beta, 0.0, out.gamma1}, p).closedForm;
  return out;
}

DesignOutcome solve(const IntrinsicParams& p, const DesignerConfig& config) {
  DesignOutcome out;
  out.cases = {caseOptimum(CaseId::BetaOne, p, config), caseOptimum(CaseId::AlphaOne, p, config)};
  const CaseOutcome* best = nullptr;
  for (const auto& c : out.cases) {
    if (!c.feasible) continue;
    if (!best || c.utility > best->utility ||
        (c.utility == best->utility && c.gamma1 < best->gamma1)) {
      best = &c;
    }
  }
  if (!best) return out;
  out.feasible = true;
  out.caseId = best->id;
  out.design = {best->alpha, best->beta, 0.0, best->gamma1};
  out.utility = best->utility;
  out.certificate = incentives::isSustainable(out.design, p);
  return out;
}

DesignOutcome optimize(const IntrinsicParams& p, const DesignerConfig& config) {
  auto out = solve(p, config);
  if (!out.feasible) throw Infeasible("no sustainable protocol on the gamma1 grid");
  return out;
}

double closedFormCaseUtility(CaseId id, double gamma1, const IntrinsicParams& p) {
  const auto a = incentives::coefficients(gamma1, p, Worker::One);
  const auto b = incentives::coefficients(gamma1, p, Worker::Two);
  const Worker binding = a.K3 <= b.K3 ? Worker::One : Worker::Two;
  const auto [agg, zeta] = errorAggregate(p);
  const double dl = p.delta;
  const double cn0 = payoffs::compliant(binding, 0.0, p);
  const double cn1 = payoffs::compliant(binding, gamma1, p);
  double num = 0.0;
  double den = 0.0;
  if (id == CaseId::BetaOne) {
    num = gamma1 * (1.0 - dl * zeta) * cn0;
    den = (1.0 - dl) * cn0 + dl * agg * (cn0 - cn1);
  } else if (id == CaseId::AlphaOne) {
    num = dl * gamma1 * zeta * cn0;
    den = (dl - 1.0) * cn0 + dl * zeta * (cn0 - cn1);
  } else {
    throw DomainError("closedFormCaseUtility: no case selected");
  }
  if (std::abs(den) < 1e-12) throw DegenerateDenominator("closedFormCaseUtility: vanishing denominator");
  return zeta - num / den;
}

OraclePoint bruteForceOracle(const IntrinsicParams& p, const DesignerConfig& config, double gamma0) {
  const int r = config.oracleGridResolution;
  if (r < 1) throw DomainError("oracle grid resolution must be >= 1");
  OraclePoint best;
  for (int k = 1; k <= r; ++k) {
    const double g1 = static_cast<double>(k) / r;
    if (!(g1 > gamma0)) continue;
    const DesignParams prices{1.0, 1.0, gamma0, g1};
    const std::array<incentives::OnePeriodPayoffs, 2> v{
        incentives::onePeriodPayoffs(prices, p, Worker::One),
        incentives::onePeriodPayoffs(prices, p, Worker::Two)};
    for (int i = 1; i <= r; ++i) {
      for (int j = 1; j <= r; ++j) {
        const DesignParams design{static_cast<double>(i) / r, static_cast<double>(j) / r, gamma0, g1};
        const auto report = incentives::isSustainable(design, p, v);
        if (!report.feasible()) continue;
        ++best.feasibleCount;
        const double u = requester::socialUtility(design, p).closedForm;
        if (!best.feasible || u > best.utility) {
          best.feasible = true;
          best.utility = u;
          best.design = design;
        }
      }
    }
  }
  return best;
}

FloorPriceReport floorPriceCheck(const IntrinsicParams& p, const DesignerConfig& config,
                                 const std::vector<double>& gamma0Grid) {
  FloorPriceReport report;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double atZero = nan;
  double bestU = -std::numeric_limits<double>::infinity();
  for (double g0 : gamma0Grid) {
    const auto o = bruteForceOracle(p, config, g0);
    const double u = o.feasible ? o.utility : nan;
    report.curve.emplace_back(g0, u);
    if (g0 == 0.0) atZero = u;
    if (o.feasible && u > bestU) {
      bestU = u;
      report.bestGamma0 = g0;
    }
  }
  if (std::isnan(atZero)) atZero = bruteForceOracle(p, config, 0.0).utility;
  report.zeroIsOptimal = true;
  for (const auto& [g0, u] : report.curve) {
    if (!std::isnan(u) && u > atZero + config.tolerance) report.zeroIsOptimal = false;
  }
  return report;
}

CrossCheck crossCheck(const DesignOutcome& outcome, const OraclePoint& oracle,
                      const DesignerConfig& config) {
  CrossCheck c{};
  c.designerUtility = outcome.utility;
  c.oracleUtility = oracle.utility;
  c.slack = 2.0 / config.oracleGridResolution + 2.0 / config.gammaGridResolution;
  std::ostringstream os;
  if (outcome.feasible != oracle.feasible) {
    c.agrees = false;
    os << "feasibility mismatch: designer " << (outcome.feasible ? "feasible" : "infeasible")
       << ", oracle " << (oracle.feasible ? "feasible" : "infeasible") << "\n";
  } else if (!outcome.feasible) {
    c.agrees = true;
    os << "both infeasible\n";
  } else {
    const double diff = oracle.utility - outcome.utility;
    c.agrees = std::abs(diff) <= c.slack;
    os << "designer_utility=" << fmtNumber(outcome.utility) << "\n"
       << "oracle_utility=" << fmtNumber(oracle.utility) << "\n"
       << "oracle_alpha=" << fmtNumber(oracle.design.alpha) << "\n"
       << "oracle_beta=" << fmtNumber(oracle.design.beta) << "\n"
       << "oracle_gamma1=" << fmtNumber(oracle.design.gamma1) << "\n"
       << "slack=" << fmtNumber(c.slack) << "\n";
    if (!c.agrees) {
      os << (diff > 0 ? "DISCREPANCY: oracle grid point beats both boundary cases\n"
                      : "DISCREPANCY: designer utility exceeds every feasible oracle point\n");
    }
  }
  c.report = os.str();
  return c;
}

std::string csvHeader() {
  return "c1,c2,s1,s2,d,delta,eps1,eps2,alpha,beta,gamma1,gamma0,utility,case,feasible\n";
}

std::string DesignOutcome::csvRow(const IntrinsicParams& p) const {
  std::ostringstream os;
  for (auto key : kParamKeys) os << fmtNumber(getParam(p, key)) << ',';
  os << fmtNumber(design.alpha) << ',' << fmtNumber(design.beta) << ',' << fmtNumber(design.gamma1)
     << ',' << fmtNumber(design.gamma0) << ',' << fmtNumber(utility) << ',' << name(caseId) << ','
     << (feasible ? 1 : 0) << '\n';
  return os.str();
}

std::string DesignOutcome::keyValueBlock(const IntrinsicParams& p) const {
  std::ostringstream os;
  os << formatParams(p);
  os << "feasible=" << (feasible ? 1 : 0) << '\n';
  os << "case=" << name(caseId) << '\n';
  if (feasible) {
    os << "alpha=" << fmtNumber(design.alpha) << '\n'
       << "beta=" << fmtNumber(design.beta) << '\n'
       << "gamma1=" << fmtNumber(design.gamma1) << '\n'
       << "gamma0=" << fmtNumber(design.gamma0) << '\n'
       << "utility=" << fmtNumber(utility) << '\n';
    if (certificate) {
      os << "sustainable=" << (certificate->sustainable ? 1 : 0) << '\n'
         << "participation=" << (certificate->participation ? 1 : 0) << '\n';
    }
  } else {
    os << "status=infeasible\n";
  }
  return os.str();
}

}  // namespace crowdrate::designer

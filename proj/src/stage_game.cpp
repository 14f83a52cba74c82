#include "crowdrate/stage_game.hpp"

#include <cmath>
#include <sstream>

#include "crowdrate/errors.hpp"
#include "crowdrate/rng.hpp"
#include "format.hpp"

namespace crowdrate::stage_game {

std::string caseName(EffortCase c) {
  std::string s = "(";
  s += c.first == Effort::C ? 'C' : 'S';
  s += ',';
  s += c.second == Effort::C ? 'C' : 'S';
  s += ')';
  return s;
}

double chi(Worker w, const IntrinsicParams& p) {
  const double s = p.attackCost(w);
  return 0.5 - s * p.d + s * p.d * p.d / 2.0;
}

double upsilon(Worker w, const IntrinsicParams& p) {
  const double c = p.effortCost(w);
  const double s = p.attackCost(w);
  const double d = p.d;
  if (c + d > 1.0) {
    throw DomainError("upsilon: c" + std::to_string(index(w) + 1) + " + d > 1");
  }
  return (d - (c + d) * (c + d) / 2.0) * (1.0 - c - s) + (1.0 - c - d) * (1.0 - c - d) * (1.0 - c) / 2.0;
}

PayoffPair caseExAnte(EffortCase c, const IntrinsicParams& p) {
  if (c.first == Effort::C && c.second == Effort::C) {
    return {chi(Worker::One, p) - p.c1 / 2.0, chi(Worker::Two, p) - p.c2 / 2.0};
  }
  if (c.first == Effort::S && c.second == Effort::S) {
    return {chi(Worker::One, p), chi(Worker::Two, p)};
  }
  if (c.first == Effort::C) return {upsilon(Worker::One, p), 0.0};
  return {0.0, upsilon(Worker::Two, p)};
}

FirstStageMatrix firstStageMatrix(const IntrinsicParams& p) {
  FirstStageMatrix m{};
  for (Effort a : {Effort::C, Effort::S}) {
    for (Effort b : {Effort::C, Effort::S}) {
      m[a == Effort::C ? 0 : 1][b == Effort::C ? 0 : 1] = caseExAnte({a, b}, p);
    }
  }
  return m;
}

namespace {

struct Side {
  bool crowdsources;
  double cost;    // effort cost if crowdsourcing
  double attack;  // s_i
};

// Payoff of `self` given lead = p_self - p_other.
double sidePayoff(const Side& self, const Side& opp, double lead, double d) {
  if (!self.crowdsources && opp.crowdsources) return 0.0;
  const double shift = (self.crowdsources && !opp.crowdsources) ? self.cost : 0.0;
  const double effort = self.crowdsources ? self.cost : 0.0;
  if (lead > shift + d) return 1.0 - effort;
  if (lead > shift) return 1.0 - effort - self.attack;
  return 0.0;
}

struct Moments {
  double sum = 0.0;
  double sumSq = 0.0;
  void add(double x) {
    sum += x;
    sumSq += x * x;
  }
  [[nodiscard]] double mean(double n) const { return sum / n; }
  [[nodiscard]] double stderrOf(double n) const {
    const double m = sum / n;
    const double var = (sumSq / n - m * m) * n / (n - 1.0);
    return std::sqrt(std::max(var, 0.0) / n);
  }
};

}  // namespace

OracleEstimate mcProductivityOracle(EffortCase c, const IntrinsicParams& p, std::uint64_t samples,
                                    std::uint64_t seed) {
  if (samples < 2) throw DomainError("mcProductivityOracle: need at least 2 samples");
  const Side one{c.first == Effort::C, p.c1, p.s1};
  const Side two{c.second == Effort::C, p.c2, p.s2};
  Rng rng(seed, 0);
  Moments m1;
  Moments m2;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const double p1 = rng.uniform();
    const double p2 = rng.uniform();
    m1.add(sidePayoff(one, two, p1 - p2, p.d));
    m2.add(sidePayoff(two, one, p2 - p1, p.d));
  }
  const auto n = static_cast<double>(samples);
  return {c, m1.mean(n), m2.mean(n), m1.stderrOf(n), m2.stderrOf(n), samples, seed};
}

std::string oracleCsvHeader() { return "case,v1,v2,stderr,samples,seed\n"; }

std::string oracleCsvRow(const OracleEstimate& e) {
  std::ostringstream os;
  os << '"' << caseName(e.effortCase) << '"' << ',' << fmtNumber(e.v1) << ',' << fmtNumber(e.v2)
     << ',' << fmtNumber(std::max(e.stderr1, e.stderr2)) << ',' << e.samples << ',' << e.seed << '\n';
  return os.str();
}

std::string discrepancyReport(const IntrinsicParams& p, std::uint64_t samples, std::uint64_t seed) {
  std::ostringstream os;
  os << "case,worker,closed_form,oracle,stderr,z,normative\n";
  const EffortCase cases[] = {{Effort::C, Effort::C}, {Effort::S, Effort::S},
                              {Effort::C, Effort::S}, {Effort::S, Effort::C}};
  std::uint64_t stream = 0;
  for (const auto& c : cases) {
    const auto closed = caseExAnte(c, p);
    const auto est = mcProductivityOracle(c, p, samples, seed + stream++);
    const bool symmetric = c.first == c.second;
    auto row = [&](int worker, double cf, double v, double se) {
      const double z = se > 0.0 ? (v - cf) / se : (v == cf ? 0.0 : INFINITY);
      os << '"' << caseName(c) << '"' << ',' << worker << ',' << fmtNumber(cf) << ','
         << fmtNumber(v) << ',' << fmtNumber(se) << ',' << fmtNumber(z) << ','
         << (symmetric ? "checked" : "diagnostic") << '\n';
    };
    row(1, closed.v1, est.v1, est.stderr1);
    row(2, closed.v2, est.v2, est.stderr2);
  }
  // Under uniform iid productivities the asymmetric event probability is
  // d - c d - d^2/2, whereas the published form uses d - (c + d)^2/2.
  os << "# (C,S) analytic gap for worker 1: c1^2/2*(1-c1-s1) = "
     << fmtNumber(p.c1 * p.c1 / 2.0 * (1.0 - p.c1 - p.s1)) << '\n';
  os << "# (S,C) analytic gap for worker 2: c2^2/2*(1-c2-s2) = "
     << fmtNumber(p.c2 * p.c2 / 2.0 * (1.0 - p.c2 - p.s2)) << '\n';
  return os.str();
}

}  // namespace crowdrate::stage_game

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace crowdrate {

/// Stage-1 action (C crowdsource / S in-house) paired with the stage-2 action
/// (N not attack / A attack). Order matches the rows of the payoff matrix.
enum class Strategy : std::size_t { CN = 0, CA = 1, SN = 2, SA = 3 };

inline constexpr std::array<Strategy, 4> kStrategies{Strategy::CN, Strategy::CA, Strategy::SN,
                                                     Strategy::SA};

constexpr std::size_t index(Strategy s) { return static_cast<std::size_t>(s); }
constexpr bool crowdsources(Strategy s) { return s == Strategy::CN || s == Strategy::CA; }
constexpr bool attacks(Strategy s) { return s == Strategy::CA || s == Strategy::SA; }
constexpr Strategy makeStrategy(bool crowdsource, bool attack) {
  if (crowdsource) return attack ? Strategy::CA : Strategy::CN;
  return attack ? Strategy::SA : Strategy::SN;
}
std::string_view name(Strategy s);

enum class Rating : std::size_t { Bad = 0, Good = 1 };

constexpr std::size_t index(Rating r) { return static_cast<std::size_t>(r); }

enum class Worker : std::size_t { One = 0, Two = 1 };

inline constexpr std::array<Worker, 2> kWorkers{Worker::One, Worker::Two};

constexpr std::size_t index(Worker w) { return static_cast<std::size_t>(w); }
constexpr Worker other(Worker w) { return w == Worker::One ? Worker::Two : Worker::One; }

/// The eight exogenous quantities of the contest. Costs, damage and prizes are
/// fractions of the unit reward.
struct IntrinsicParams {
  double c1 = 0.1;
  double c2 = 0.2;
  double s1 = 0.2;
  double s2 = 0.1;
  double d = 0.5;
  double delta = 0.95;
  double eps1 = 0.2;
  double eps2 = 0.05;

  [[nodiscard]] double effortCost(Worker w) const { return w == Worker::One ? c1 : c2; }
  [[nodiscard]] double attackCost(Worker w) const { return w == Worker::One ? s1 : s2; }

  bool operator==(const IntrinsicParams&) const = default;
};

/// Protocol decision variables: promotion probability alpha, demotion
/// probability beta and the per-rating winner payments.
struct DesignParams {
  double alpha = 0.5;
  double beta = 0.5;
  double gamma0 = 0.0;
  double gamma1 = 0.5;

  [[nodiscard]] double price(Rating r) const { return r == Rating::Good ? gamma1 : gamma0; }

  bool operator==(const DesignParams&) const = default;
};

struct ErrorAggregate {
  double epsAgg;  // probability a compliant action is not observed as CN
  double zeta;    // 1 - epsAgg
};

ErrorAggregate errorAggregate(const IntrinsicParams& p);

/// 1 - eps1 - 2 eps2 + 2 eps1 eps2: the drop in the probability of being seen
/// as compliant when attacking instead of complying.
double detectionMargin(const IntrinsicParams& p);

struct Violation {
  std::string key;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] bool mentions(std::string_view message) const;
  [[nodiscard]] std::string describe() const;
};

ValidationReport validate(const IntrinsicParams& p);
ValidationReport validate(const DesignParams& design);

inline constexpr std::array<std::string_view, 8> kParamKeys{"c1", "c2", "s1",   "s2",
                                                            "d",  "delta", "eps1", "eps2"};

/// Throws ParseError for unknown keys.
double getParam(const IntrinsicParams& p, std::string_view key);
void setParam(IntrinsicParams& p, std::string_view key, double value);

/// key=value lines, `#` starts a comment, every key in kParamKeys exactly once.
IntrinsicParams parseParams(std::string_view text);
IntrinsicParams loadParams(const std::string& path);
std::string formatParams(const IntrinsicParams& p);

}  // namespace crowdrate

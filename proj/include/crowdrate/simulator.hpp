#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "crowdrate/domain.hpp"

// Seeded Monte-Carlo model of the rated platform, used as an empirical check
// on the analytic chain, utility and deviation results.
namespace crowdrate::sim {

/// Worker `worker` plays CA once, in the first period, starting from `rating`.
struct Deviation {
  Worker worker;
  Rating rating;
};

struct SimConfig {
  std::int64_t periods = 100000;  // chain length for runChain
  int replicates = 30;
  std::uint64_t seed = 1;
  std::optional<Deviation> deviation;
  int population = 1;             // runChain: agents per type; runUtility: paths per start rating
  std::int64_t burnIn = 0;        // discarded leading periods in runChain
  int threads = 1;                // replicate-level parallelism; results do not depend on it
};

/// Throws DomainError on nonpositive counts.
void validate(const SimConfig& config);

struct Estimate {
  double mean = 0.0;
  double stderr = 0.0;
};

struct SimResult {
  Estimate eta0;
  Estimate eta1;
  Estimate socialUtility;                          // per-match requester utility
  std::array<std::array<Estimate, 2>, 2> vInf{};   // [worker][start rating]
  std::optional<Estimate> deviationValue;
  std::int64_t demotions = 0;
  std::int64_t promotions = 0;
  bool etaSumsToOne = true;
  std::int64_t horizon = 0;       // discounted-sum truncation length
  double truncationBound = 0.0;   // bound on the omitted tail
};

/// Compliant population; reports the time-averaged rating fractions and the
/// requester's per-match utility.
SimResult runChain(const DesignParams& design, const IntrinsicParams& p, const SimConfig& config);

/// Discounted utilities of compliant workers from each start rating, plus the
/// one-shot deviation value if configured. Truncated at delta^T < 1e-6.
SimResult runUtility(const DesignParams& design, const IntrinsicParams& p, const SimConfig& config);

/// metric,analytic,empirical,stderr,z rows for every populated estimate.
std::string comparisonCsv(const SimResult& result, const DesignParams& design,
                          const IntrinsicParams& p, bool chain, bool utility);

}  // namespace crowdrate::sim

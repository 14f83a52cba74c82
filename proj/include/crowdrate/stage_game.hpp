#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "crowdrate/domain.hpp"

// First-stage payoffs of the unregulated two-stage contest, ex ante over the
// workers' productivities.
namespace crowdrate::stage_game {

enum class Effort { C, S };

struct EffortCase {
  Effort first;
  Effort second;
};

std::string caseName(EffortCase c);

struct PayoffPair {
  double v1;
  double v2;
};

/// Expected share of a worker whose opponent also picked the same effort:
/// 1/2 - s d + s d^2/2.
double chi(Worker w, const IntrinsicParams& p);

/// Payoff of the lone crowdsourcing worker against an in-house opponent.
/// Throws DomainError when c_i + d > 1.
double upsilon(Worker w, const IntrinsicParams& p);

PayoffPair caseExAnte(EffortCase c, const IntrinsicParams& p);

/// 2x2 grid indexed [effort1][effort2], C before S.
using FirstStageMatrix = std::array<std::array<PayoffPair, 2>, 2>;
FirstStageMatrix firstStageMatrix(const IntrinsicParams& p);

struct OracleEstimate {
  EffortCase effortCase;
  double v1;
  double v2;
  double stderr1;
  double stderr2;
  std::uint64_t samples;
  std::uint64_t seed;
};

/// Draws p1, p2 iid uniform on [0,1]. A worker leading by more than shift + d
/// keeps the prize without attacking; leading by (shift, shift + d] it wins but
/// pays the attack cost. shift is the crowdsourcer's own effort cost when the
/// opponent stays in-house and 0 otherwise; an in-house worker facing a
/// crowdsourcer earns 0.
OracleEstimate mcProductivityOracle(EffortCase c, const IntrinsicParams& p, std::uint64_t samples,
                                    std::uint64_t seed);

/// "case,v1,v2,stderr,samples,seed" rows; stderr is the larger of the two.
std::string oracleCsvHeader();
std::string oracleCsvRow(const OracleEstimate& e);

/// Closed form vs oracle for all four cases, including the known (C,S)/(S,C)
/// mismatch between the published form and the uniform-iid model.
std::string discrepancyReport(const IntrinsicParams& p, std::uint64_t samples, std::uint64_t seed);

}  // namespace crowdrate::stage_game

#pragma once

#include <string>
#include <vector>

#include "crowdrate/designer.hpp"
#include "crowdrate/domain.hpp"

namespace crowdrate::sweep {

struct SweepSpec {
  std::string key;  // one of kParamKeys
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  IntrinsicParams base{};
  designer::DesignerConfig config{};
  int threads = 1;
};

/// Throws DomainError on an unknown key, from >= to or step <= 0.
void validate(const SweepSpec& spec);

/// from, from + step, ... up to `to` (inclusive within 1e-9 of a step).
std::vector<double> gridValues(const SweepSpec& spec);

struct SweepRow {
  IntrinsicParams params{};
  bool valid = false;
  designer::DesignOutcome outcome{};
  std::string message;  // validation failure for invalid points
};

/// Rows in grid order regardless of thread count.
std::vector<SweepRow> run(const SweepSpec& spec);

/// designer::csvHeader() followed by one line per row; invalid points keep the
/// parameter columns, leave design columns empty and carry case "invalid".
std::string csv(const std::vector<SweepRow>& rows);

}  // namespace crowdrate::sweep

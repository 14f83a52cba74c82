#include "crowdrate/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "crowdrate/errors.hpp"
#include "format.hpp"

namespace crowdrate::sweep {

void validate(const SweepSpec& spec) {
  if (std::find(kParamKeys.begin(), kParamKeys.end(), spec.key) == kParamKeys.end()) {
    throw DomainError("sweep: unknown parameter " + spec.key);
  }
  if (!(spec.from < spec.to)) throw DomainError("sweep: from must be below to");
  if (!(spec.step > 0.0)) throw DomainError("sweep: step must be positive");
  if (spec.threads < 1) throw DomainError("sweep: threads must be positive");
  designer::validate(spec.config);
}

std::vector<double> gridValues(const SweepSpec& spec) {
  validate(spec);
  const auto n = static_cast<long>(std::floor((spec.to - spec.from) / spec.step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    // Rounded to 12 digits so 0.1 + 3*0.05 prints and compares as 0.25.
    const double v = spec.from + static_cast<double>(i) * spec.step;
    values.push_back(std::stod(fmtNumber(v)));
  }
  return values;
}

std::vector<SweepRow> run(const SweepSpec& spec) {
  const auto values = gridValues(spec);
  std::vector<SweepRow> rows(values.size());
  auto evaluate = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.params = spec.base;
    setParam(row.params, spec.key, values[i]);
    const auto report = validate(row.params);
    if (!report.ok()) {
      row.message = report.describe();
      return;
    }
    row.valid = true;
    row.outcome = designer::solve(row.params, spec.config);
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(spec.threads), rows.size());
  if (n <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) evaluate(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < rows.size(); i += n) evaluate(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << designer::csvHeader();
  for (const auto& row : rows) {
    if (row.valid) {
      os << row.outcome.csvRow(row.params);
      continue;
    }
    for (auto key : kParamKeys) os << fmtNumber(getParam(row.params, key)) << ',';
    os << ",,,,,invalid,0\n";
  }
  return os.str();
}

}  // namespace crowdrate::sweep

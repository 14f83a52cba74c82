#include "crowdrate/domain.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "crowdrate/errors.hpp"
#include "format.hpp"

namespace crowdrate {

std::string_view name(Strategy s) {
  switch (s) {
    case Strategy::CN: return "CN";
    case Strategy::CA: return "CA";
    case Strategy::SN: return "SN";
    case Strategy::SA: return "SA";
  }
  return "?";
}

ErrorAggregate errorAggregate(const IntrinsicParams& p) {
  const double agg = p.eps1 + p.eps2 - p.eps1 * p.eps2;
  return {agg, 1.0 - agg};
}

double detectionMargin(const IntrinsicParams& p) {
  return 1.0 - p.eps1 - 2.0 * p.eps2 + 2.0 * p.eps1 * p.eps2;
}

bool ValidationReport::mentions(std::string_view message) const {
  for (const auto& v : violations) {
    if (v.message == message) return true;
  }
  return false;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.key << ": " << v.message << "\n";
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

namespace {

bool inOpenUnit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

ValidationReport validate(const IntrinsicParams& p) {
  ValidationReport r;
  auto open = [&](std::string_view key, double v) {
    if (!inOpenUnit(v)) r.violations.push_back({std::string(key), std::string(key) + " out of range"});
  };
  open("c1", p.c1);
  open("c2", p.c2);
  open("s1", p.s1);
  open("s2", p.s2);
  open("d", p.d);
  if (!(p.delta >= 0.0 && p.delta < 1.0)) r.violations.push_back({"delta", "delta out of range"});
  if (!(p.eps1 >= 0.0 && p.eps1 < 0.5)) r.violations.push_back({"eps1", "eps1 out of range"});
  if (!(p.eps2 >= 0.0 && p.eps2 < 0.5)) r.violations.push_back({"eps2", "eps2 out of range"});
  // Checked independently of the range checks so the report is complete.
  if (!(detectionMargin(p) > 0.0)) {
    r.violations.push_back({"eps1,eps2", "incentive denominator nonpositive"});
  }
  for (Worker w : kWorkers) {
    if (p.attackCost(w) > p.d) {
      r.warnings.push_back("s" + std::to_string(index(w) + 1) +
                           " > d: attacking is not socially valuable");
    }
  }
  return r;
}

ValidationReport validate(const DesignParams& design) {
  ValidationReport r;
  if (!(design.alpha > 0.0 && design.alpha <= 1.0)) r.violations.push_back({"alpha", "alpha out of range"});
  if (!(design.beta > 0.0 && design.beta <= 1.0)) r.violations.push_back({"beta", "beta out of range"});
  if (!(design.gamma0 >= 0.0 && design.gamma0 < design.gamma1 && design.gamma1 <= 1.0)) {
    r.violations.push_back({"gamma", "prices must satisfy 0 <= gamma0 < gamma1 <= 1"});
  }
  return r;
}

namespace {

double* slot(IntrinsicParams& p, std::string_view key) {
  if (key == "c1") return &p.c1;
  if (key == "c2") return &p.c2;
  if (key == "s1") return &p.s1;
  if (key == "s2") return &p.s2;
  if (key == "d") return &p.d;
  if (key == "delta") return &p.delta;
  if (key == "eps1") return &p.eps1;
  if (key == "eps2") return &p.eps2;
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool isDecimal(std::string_view v) {
  if (v.empty()) return false;
  std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
  bool digits = false;
  bool dot = false;
  for (; i < v.size(); ++i) {
    if (v[i] >= '0' && v[i] <= '9') {
      digits = true;
    } else if (v[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits;
}

}  // namespace

double getParam(const IntrinsicParams& p, std::string_view key) {
  auto copy = p;
  const double* s = slot(copy, key);
  if (!s) throw ParseError("unknown parameter '" + std::string(key) + "'");
  return *s;
}

void setParam(IntrinsicParams& p, std::string_view key, double value) {
  double* s = slot(p, key);
  if (!s) throw ParseError("unknown parameter '" + std::string(key) + "'");
  *s = value;
}

IntrinsicParams parseParams(std::string_view text) {
  IntrinsicParams p;
  std::map<std::string, bool, std::less<>> seen;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(lineNo) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!slot(p, key)) throw ParseError("unknown key '" + std::string(key) + "'");
    if (seen.count(key)) throw ParseError("duplicate key '" + std::string(key) + "'");
    if (!isDecimal(value)) {
      throw ParseError("key '" + std::string(key) + "': not a decimal value '" + std::string(value) + "'");
    }
    double parsed = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(),
                                     parsed, std::chars_format::fixed);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
      throw ParseError("key '" + std::string(key) + "': not a decimal value '" + std::string(value) + "'");
    }
    setParam(p, key, parsed);
    seen.emplace(std::string(key), true);
  }
  for (auto key : kParamKeys) {
    if (!seen.count(key)) throw ParseError("missing key '" + std::string(key) + "'");
  }
  return p;
}

IntrinsicParams loadParams(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseParams(buf.str());
}

std::string formatParams(const IntrinsicParams& p) {
  std::string out;
  for (auto key : kParamKeys) {
    out += std::string(key) + "=" + fmtNumber(getParam(p, key)) + "\n";
  }
  return out;
}

}  // namespace crowdrate

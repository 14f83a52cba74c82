#pragma once

#include <cstdio>
#include <string>

namespace crowdrate {

// Every number the library writes goes through here: 12 significant digits.
inline std::string fmtNumber(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace crowdrate

#pragma once

#include <cstdio>
#include <string>

namespace aoiq {

/// Fixed 9 decimal places ("2.000000000").
inline std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

/// 9 significant digits, trailing zeros trimmed ("0.5", "4").
inline std::string sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

/// 9 significant digits, trailing zeros kept ("3.20000000").
inline std::string sig9z(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.9g", v);
  return buf;
}

}  // namespace aoiq

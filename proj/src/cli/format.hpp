#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace qdemon::cli::detail {

/// Shortest %g form that parses back to exactly `v`.
inline std::string shortest(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    const int len = std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::from_chars(buf, buf + len, back);
    if (back == v) break;
  }
  return buf;
}

/// %g with `digits` significant digits; magnitudes below 1e-12 print as 0.
inline std::string significant(double v, int digits) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace qdemon::cli::detail

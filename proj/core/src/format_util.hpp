#pragma once

#include <cstdio>
#include <string>

namespace hpst::detail {

/// printf-style fixed formatting for a single double.
inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// Round-trippable shortest-ish representation for CSV output.
inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace hpst::detail

#pragma once

#include <cstdio>
#include <string>

namespace homstress {

/// Shortest-round-trip style decimal with 17 significant digits, the
/// common format for every number the tool serializes.
inline std::string sig17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace homstress

#pragma once

#include <cstdio>
#include <string>

namespace flowsort {

// Compact numeric rendering for diagnostics. Report emitters use their own
// pinned formats; this is only for human-readable error text.
inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace flowsort

#pragma once

#include <cstdio>
#include <string>

namespace fjvote {

/// Full-precision decimal rendering (17 significant digits) so determinism
/// of output files can be checked by byte comparison.
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace fjvote

#pragma once

#include <cmath>

#include "tmotif/exact.hpp"

namespace tmotif::detail {

// One window's contribution to a shift estimate: the sum over its histogram of
// count / ((1 - duration / width) * q). The in-memory and streaming
// estimators both go through here so their results agree bit for bit.
inline double window_term(const CountDurationHistogram& h, TimeDelta width, TimeDelta delta,
                          double q) {
  double z = 0.0;
  for (const auto& [d, count] : h.entries()) {
    if (d < 0 || d > delta || d >= width) {
      throw Error(ErrorKind::kDomain, "exact counter reported a duration outside [0, delta]");
    }
    z += static_cast<double>(count) /
         ((1.0 - static_cast<double>(d) / static_cast<double>(width)) * q);
  }
  if (!std::isfinite(z)) throw Error(ErrorKind::kOverflow, "non-finite window estimate");
  return z;
}

}  // namespace tmotif::detail

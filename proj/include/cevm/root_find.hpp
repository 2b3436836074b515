#pragma once

#include <cmath>
#include <string>

#include "cevm/errors.hpp"

namespace cevm {

/// Solves f(x) = target for a strictly increasing f on [lo, hi] by bisection.
/// Runs until the bracket can no longer be split in double precision or its
/// width drops to abs_tol, whichever comes first.
template <typename F>
double bisect_increasing(F&& f, double target, double lo, double hi,
                         double abs_tol = 0.0, const char* what = "bisect") {
  double f_lo = f(lo) - target;
  double f_hi = f(hi) - target;
  if (!(f_lo <= 0.0 && f_hi >= 0.0)) {
    throw NumericError(std::string(what) + ": target " + std::to_string(target) +
                       " not bracketed by [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "] (f-target = " + std::to_string(f_lo) +
                       ", " + std::to_string(f_hi) + ")");
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  for (int iter = 0; iter < 2200; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || hi - lo <= abs_tol) {
      return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
    }
    const double f_mid = f(mid) - target;
    if (f_mid == 0.0) return mid;
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  throw NumericError(std::string(what) + ": bisection did not terminate");
}

}  // namespace cevm

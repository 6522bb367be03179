#pragma once

#include <cmath>
#include <optional>

namespace biochar {

struct BisectOptions {
  double abs_tol = 0.0;  // stop when the bracket is narrower than
  double rel_tol = 0.0;  // abs_tol + rel_tol * max(|lo|, |hi|)
  int max_iter = 2000;
};

/// Bisection on a sign-changing bracket [lo, hi]. With zero tolerances it
/// runs until the bracket cannot be split further in double precision.
/// Returns nullopt when f(lo) and f(hi) share a strict sign.
template <class F>
std::optional<double> bisect(F&& f, double lo, double hi, BisectOptions opts = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) return std::nullopt;

  for (int i = 0; i < opts.max_iter; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double width = hi - lo;
    if (width <= opts.abs_tol + opts.rel_tol * std::fmax(std::fabs(lo), std::fabs(hi))) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  // The endpoint with the smaller residual.
  return std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
}

}  // namespace biochar

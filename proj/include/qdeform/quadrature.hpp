#pragma once

#include <cstddef>
#include <functional>

namespace qdeform {

struct QuadResult {
  double value = 0.0;
  /// Sum over subintervals of |K15 - G7|.
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. Bisects the interval
/// with the largest error until the total error is below
/// max(abs_tol, rel_tol * |value|). Throws ConvergenceError if the interval
/// budget runs out first.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, std::size_t max_intervals = 4000);

}  // namespace qdeform

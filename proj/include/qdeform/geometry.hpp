#pragma once

#include "qdeform/params.hpp"

namespace qdeform {

/// Conformal factor of the Fubini-Study metric, dsigma^2 = W(|z|^2) dzbar dz.
struct MetricPoint {
  double x = 0.0;
  double w = 0.0;
  /// Polar form W(r^2) (dr^2 + r^2 dtheta^2).
  double ds2_coeff_r = 0.0;
  double ds2_coeff_theta = 0.0;
  /// q > 1 lies outside the regime the construction was derived for; the
  /// value is still the analytic continuation inside the disk.
  bool extended_regime = false;
};

/// W(x) = d<N>/dx = (N' N + x N'' N - x N'^2) / N^2.
MetricPoint metric_w(const DeformParams& p, double x);

/// -2 q^2 (1 - q) / ((l^2 q^lambda)^2 (1 + q))
double metric_slope_prediction(const DeformParams& p);

struct MetricSmallX {
  double measured_slope = 0.0;
  double predicted_slope = 0.0;
  double rel_error = 0.0;
};

/// (W(x) - W(0)) / x against the leading small-x coefficient.
/// Requires x <= 1e-3 * min(1, R).
MetricSmallX metric_smallx_check(const DeformParams& p, double x);

}  // namespace qdeform

#include "qdeform/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "qdeform/coherent.hpp"

namespace qdeform {

MetricPoint metric_w(const DeformParams& p, double x) {
  const SeriesEval n = normalization(p, x);
  MetricPoint out;
  out.x = x;
  out.extended_regime = p.q_above_one();
  if (x == 0.0) {
    out.w = n.d1;  // N'(0) = q / (l^2 q^lambda)
  } else {
    out.w = (n.d1 * n.value + x * n.d2 * n.value - x * n.d1 * n.d1) / (n.value * n.value);
  }
  out.ds2_coeff_r = out.w;
  out.ds2_coeff_theta = x * out.w;
  return out;
}

double metric_slope_prediction(const DeformParams& p) {
  const double q = p.q();
  const double s = p.scale();
  return -2.0 * q * q * (1.0 - q) / (s * s * (1.0 + q));
}

MetricSmallX metric_smallx_check(const DeformParams& p, double x) {
  const double limit = 1e-3 * std::min(1.0, domain_radius(p).radius);
  if (!(x > 0.0) || x > limit) {
    throw DomainError("small-x metric check needs 0 < x <= 1e-3 min(1, R)");
  }
  MetricSmallX out;
  out.measured_slope = (metric_w(p, x).w - metric_w(p, 0.0).w) / x;
  out.predicted_slope = metric_slope_prediction(p);
  out.rel_error = std::abs(out.measured_slope - out.predicted_slope) / std::abs(out.predicted_slope);
  return out;
}

}  // namespace qdeform

#pragma once

#include <complex>

#include "qdeform/algebra.hpp"
#include "qdeform/params.hpp"

namespace qdeform {

/// Photon-number statistics of |z> at x = |z|^2.
struct StatsPoint {
  double x = 0.0;
  double mean_n = 0.0;
  double second_moment = 0.0;
  /// (<N^2> - <N>^2 - <N>) / <N>, defined as 0 at x = 0.
  double mandel_q = 0.0;
};

/// P(n) = q^{n(n+1)/2} x^n / ((l^2 q^lambda)^n [n]_q! N(x)).
double photon_pdf(const DeformParams& p, double x, long n);

struct MonomialOptions {
  /// Relative bound on the omitted tail of the defining series.
  double tol = 1e-15;
  std::size_t max_terms = 10'000'000;
};

/// <(b^dag)^s b^r> in |z>, summed from its defining series.
std::complex<double> monomial_expectation(const DeformParams& p, std::complex<double> z, long s, long r,
                                          const MonomialOptions& opts = {});

StatsPoint stats_point(const DeformParams& p, double x);

/// -q(1-q) / (l^2 q^lambda (1+q)), the leading coefficient of Q(x).
double mandel_slope_prediction(const DeformParams& p);

struct MandelSlopeEstimate {
  /// Q(h)/h at the probe point.
  double q_over_x = 0.0;
  /// 2 Q(h)/h - Q(2h)/(2h), cancels the O(h) term.
  double richardson = 0.0;
  double predicted = 0.0;
  /// |q_over_x - predicted| / |predicted|
  double rel_error = 0.0;
  double richardson_rel_error = 0.0;
};

MandelSlopeEstimate mandel_slope(const DeformParams& p, double h = 1e-4);

/// Conventional bosons b = a sqrt(N/phi(N)), b^dag = sqrt(N/phi(N)) a^dag on
/// the truncated space; b|0> = 0 is imposed directly.
struct BosonPair {
  TridiagonalOperator b;
  TridiagonalOperator b_dag;
};

BosonPair boson_operators(const DeformParams& p, const FockTruncation& t);

}  // namespace qdeform

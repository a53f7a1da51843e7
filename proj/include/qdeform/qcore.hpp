#pragma once

#include <cstddef>
#include <functional>

#include "qdeform/params.hpp"
#include "qdeform/qarith.hpp"

namespace qdeform {

/// Value of a power series with its first two derivatives.
struct SeriesEval {
  double value = 1.0;
  double d1 = 0.0;
  double d2 = 0.0;
  /// Rigorous bound on the truncation error of `value`.
  double tail_bound = 0.0;
  /// Same for `d1` and `d2`.
  double d1_tail_bound = 0.0;
  double d2_tail_bound = 0.0;
  std::size_t terms_used = 1;
};

/// Truncated infinite product with a relative tail bound.
struct ProductEval {
  double value = 1.0;
  /// |true/value - 1| <= tail_bound.
  double tail_bound = 0.0;
  std::size_t factors_used = 0;
};

/// Lattice sum with an estimate of the omitted part.
struct LatticeSum {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t terms_used = 0;
};

/// Throws DomainError unless q > 0 and |q - 1| > 1e-12.
void check_base(double q);

double q_number(long n, double q);

/// [n]_q!, throws OverflowError when the product leaves the double range.
double q_factorial(long n, double q);

/// log [n]_q!, finite for any n the caller can iterate to.
double log_q_factorial(long n, double q);

/// (a; base)_n for finite n >= 0.
double q_pochhammer(double a, double base, long n);

/// (a; base)_inf, requires |base| < 1. Factors are taken until
/// |a base^k| < 1e-17; the recorded bound is exp(sum of the rest) - 1.
ProductEval q_pochhammer_inf(double a, double base);

/// (a; 1/q)_inf for q > 1, with the base given through q itself. Near q = 1
/// this avoids the error of rounding 1/q, which the product amplifies by about
/// a / (1 - 1/q)^2. Uses the log series when |a| < 1 makes it the cheaper route.
ProductEval q_pochhammer_inf_inverse(double a, double q);

double structure_function(const DeformParams& p, long n);

/// l^2 q^lambda (f(x) - f(x/q)) / ((q - 1) x). Undefined at x = 0.
double q_derivative(const std::function<double(double)>& f, const DeformParams& p, double x);

struct QIntegralOptions {
  /// Stop once a lattice increment falls below rel_tol of the partial sum...
  double rel_tol = 1e-14;
  /// ...and the tail bound is below abs_tol (0 means rel_tol * |sum|).
  double abs_tol = 0.0;
  std::size_t max_terms = 1'000'000;
  /// sup |f| over (0, x]. Without it the tail uses the largest |f| sampled,
  /// which is an estimate rather than a bound.
  std::function<double(double)> sup_on_interval;
};

/// Jackson-type lattice integral over (0, a] on the points a q^-k:
/// (q - 1)/(l^2 q^lambda) * a * sum_k q^-k f(a q^-k). Requires q > 1.
LatticeSum q_integral(const std::function<double(double)>& f, const DeformParams& p, double a,
                      const QIntegralOptions& opts = {});

}  // namespace qdeform

#include "qdeform/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qdeform {

namespace {

constexpr double kNegligibleFactor = 1e-17;
constexpr std::size_t kMaxFactors = 100'000'000;

}  // namespace

void check_base(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DomainError("q-base must be positive and finite, got " + std::to_string(q));
  }
  if (std::abs(q - 1.0) <= kQExclusionBand) {
    throw DomainError("q-base lies in the exclusion band |q - 1| <= 1e-12");
  }
}

double q_number(long n, double q) {
  check_base(q);
  if (n < 0) throw DomainError("q_number requires n >= 0");
  return q_number_unchecked(n, q);
}

double q_factorial(long n, double q) {
  check_base(q);
  if (n < 0) throw DomainError("q_factorial requires n >= 0");
  double acc = 1.0;
  for (long k = 2; k <= n; ++k) {
    acc *= q_number_unchecked(k, q);
    if (!std::isfinite(acc)) {
      throw OverflowError("[n]_q! overflows double at n = " + std::to_string(k));
    }
  }
  return acc;
}

double log_q_factorial(long n, double q) {
  check_base(q);
  if (n < 0) throw DomainError("log_q_factorial requires n >= 0");
  CompensatedSum<double> acc;
  for (long k = 2; k <= n; ++k) {
    acc += std::log(q_number_unchecked(k, q));
  }
  return acc.value();
}

double q_pochhammer(double a, double base, long n) {
  if (n < 0) throw DomainError("finite q-Pochhammer order must be >= 0");
  double acc = 1.0;
  double power = 1.0;
  for (long k = 0; k < n; ++k) {
    acc *= 1.0 - a * power;
    power *= base;
  }
  return acc;
}

ProductEval q_pochhammer_inf(double a, double base) {
  if (!(std::abs(base) < 1.0)) {
    throw DomainError("infinite q-Pochhammer requires |base| < 1");
  }
  ProductEval out;
  double term = a;
  while (std::abs(term) >= kNegligibleFactor) {
    if (out.factors_used >= kMaxFactors) {
      throw ConvergenceError("infinite q-Pochhammer did not reach the truncation threshold");
    }
    out.value *= 1.0 - term;
    term *= base;
    ++out.factors_used;
  }
  // sum_{j>=k} |a base^j| <= |term| / (1 - |base|); -log(1 - t) <= t / (1 - t).
  const double rest = std::abs(term) / (1.0 - std::abs(base));
  out.tail_bound = std::expm1(rest / (1.0 - rest));
  return out;
}

ProductEval q_pochhammer_inf_inverse(double a, double q) {
  if (!(q > 1.0)) throw DomainError("q_pochhammer_inf_inverse requires q > 1");
  const double log_q = std::log(q);
  const double product_cost = std::log(std::max(std::abs(a), kNegligibleFactor) / kNegligibleFactor) / log_q;
  const double series_cost = std::abs(a) < 1.0 ? std::log(kNegligibleFactor) / std::log(std::abs(a)) : std::numeric_limits<double>::infinity();

  ProductEval out;
  if (series_cost < product_cost) {
    // log (a; 1/q)_inf = -sum_j a^j / (j (1 - q^-j)); the j-th term shrinks by
    // at least |a| per step.
    CompensatedSum<double> log_value;
    double power = 1.0;
    for (long j = 1;; ++j) {
      if (static_cast<std::size_t>(j) > kMaxFactors) {
        throw ConvergenceError("q-Pochhammer log series did not converge");
      }
      power *= a;
      const double t = -power / (static_cast<double>(j) * -std::expm1(-static_cast<double>(j) * log_q));
      log_value += t;
      ++out.factors_used;
      const double rest = std::abs(t) * std::abs(a) / (1.0 - std::abs(a));
      if (rest <= kNegligibleFactor * std::max(1.0, std::abs(log_value.value()))) {
        out.value = std::exp(log_value.value());
        out.tail_bound = std::expm1(rest);
        return out;
      }
    }
  }
  // Powers taken afresh from log q so that rounding in 1/q does not compound
  // over many factors.
  double term = a;
  while (std::abs(term) >= kNegligibleFactor) {
    if (out.factors_used >= kMaxFactors) {
      throw ConvergenceError("infinite q-Pochhammer did not reach the truncation threshold");
    }
    out.value *= 1.0 - term;
    ++out.factors_used;
    term = a * std::exp(-static_cast<double>(out.factors_used) * log_q);
  }
  const double rest = std::abs(term) / -std::expm1(-log_q);
  out.tail_bound = std::expm1(rest / (1.0 - rest));
  return out;
}

double structure_function(const DeformParams& p, long n) {
  if (n < 0) throw DomainError("structure function requires n >= 0");
  return structure_function_t<double>(p, n);
}

double q_derivative(const std::function<double(double)>& f, const DeformParams& p, double x) {
  if (x == 0.0) {
    throw DomainError("q-derivative is undefined at x = 0; use the series coefficient");
  }
  const double q = p.q();
  return p.scale() * (f(x) - f(x / q)) / ((q - 1.0) * x);
}

LatticeSum q_integral(const std::function<double(double)>& f, const DeformParams& p, double a,
                      const QIntegralOptions& opts) {
  const double q = p.q();
  if (!(q > 1.0)) {
    throw DomainError("lattice integral needs q > 1 so the points a q^-k accumulate at 0");
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("lattice integral upper limit must be positive and finite");
  }
  const double prefactor = (q - 1.0) * a / p.scale();
  const double inv_q = 1.0 / q;
  const double geometric = inv_q / (1.0 - inv_q);

  CompensatedSum<double> sum;
  double weight = 1.0;  // q^-k
  double point = a;     // a q^-k
  double sampled_sup = 0.0;
  for (std::size_t k = 0; k < opts.max_terms; ++k) {
    const double fk = f(point);
    if (!std::isfinite(fk)) {
      throw DomainError("lattice integrand is not finite at x = " + std::to_string(point));
    }
    const double incr = weight * fk;
    sum += incr;
    sampled_sup = std::max(sampled_sup, std::abs(fk));

    const double next_point = point * inv_q;
    const double sup = opts.sup_on_interval ? opts.sup_on_interval(next_point) : sampled_sup;
    // sum_{j>k} q^-j |f(a q^-j)| <= sup * q^-k * q^-1 / (1 - q^-1)
    const double tail = prefactor * sup * weight * geometric;
    const double total = std::abs(prefactor * sum.value());
    const double abs_goal = opts.abs_tol > 0.0 ? opts.abs_tol : opts.rel_tol * total;
    if (std::abs(incr) <= opts.rel_tol * std::abs(sum.value()) && tail <= abs_goal) {
      return {prefactor * sum.value(), tail, k + 1};
    }
    weight *= inv_q;
    point = next_point;
  }
  throw ConvergenceError("lattice integral increments failed to decay within " +
                         std::to_string(opts.max_terms) + " terms");
}

}  // namespace qdeform

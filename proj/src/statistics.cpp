#include "qdeform/statistics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qdeform/coherent.hpp"
#include "qdeform/qcore.hpp"

namespace qdeform {

namespace {

// log of q^{k(k+1)/2} / ((l^2 q^lambda)^k [k]_q!), built from the q-factorial
// rather than from the structure-function product.
class LogCoefficients {
 public:
  explicit LogCoefficients(const DeformParams& p)
      : log_q_(std::log(p.q())), log_scale_(std::log(p.scale())), q_(p.q()) {}

  double operator()(long k) {
    while (static_cast<long>(log_fact_.size()) <= k) {
      const long j = static_cast<long>(log_fact_.size());
      log_fact_.push_back(log_fact_.back() + std::log(q_number_unchecked(j, q_)));
    }
    const double dk = static_cast<double>(k);
    return 0.5 * dk * (dk + 1.0) * log_q_ - dk * log_scale_ - log_fact_[static_cast<std::size_t>(k)];
  }

 private:
  double log_q_;
  double log_scale_;
  double q_;
  std::vector<double> log_fact_{0.0};
};

}  // namespace

double photon_pdf(const DeformParams& p, double x, long n) {
  check_in_disk(p, x);
  if (n < 0) throw DomainError("photon number must be >= 0");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  LogCoefficients coeff(p);
  const double log_pdf = coeff(n) + static_cast<double>(n) * std::log(x) - log_normalization(p, x).log_value;
  return std::exp(log_pdf);
}

std::complex<double> monomial_expectation(const DeformParams& p, std::complex<double> z, long s, long r,
                                          const MonomialOptions& opts) {
  if (s < 0 || r < 0) throw DomainError("monomial powers must be >= 0");
  const double x = std::norm(z);
  check_in_disk(p, x);
  if (x == 0.0) return (s == 0 && r == 0) ? 1.0 : 0.0;

  LogCoefficients coeff(p);
  const double log_x = std::log(x);
  const double log_norm = log_normalization(p, x).log_value;
  const double ds = static_cast<double>(s);
  const double dr = static_cast<double>(r);
  // log of the n-th summand including |z|^{s+r} / N(x)
  const auto log_term = [&](long n) {
    const double dn = static_cast<double>(n);
    return 0.5 * (coeff(n + s) + coeff(n + r) + std::lgamma(dn + dr + 1.0) + std::lgamma(dn + ds + 1.0)) -
           std::lgamma(dn + 1.0) + dn * log_x + 0.5 * (ds + dr) * log_x - log_norm;
  };

  CompensatedSum<double> sum;
  double current = log_term(0);
  double next = log_term(1);
  for (long n = 0; n < static_cast<long>(opts.max_terms); ++n) {
    sum += std::exp(current);
    const double after = log_term(n + 2);
    const double ratio = std::exp(after - next);  // bounds every later ratio
    if (ratio < 1.0) {
      const double tail = std::exp(next) / (1.0 - ratio);
      if (tail <= opts.tol * sum.value()) {
        return std::polar(sum.value(), (dr - ds) * std::arg(z));
      }
    }
    current = next;
    next = after;
  }
  throw ConvergenceError("monomial expectation series did not converge for s = " + std::to_string(s) +
                         ", r = " + std::to_string(r));
}

StatsPoint stats_point(const DeformParams& p, double x) {
  const SeriesEval n = normalization(p, x);
  StatsPoint out;
  out.x = x;
  if (x == 0.0) return out;
  out.mean_n = x * n.d1 / n.value;
  out.second_moment = x * x * n.d2 / n.value + out.mean_n;
  out.mandel_q = x * (n.d2 / n.d1 - n.d1 / n.value);
  return out;
}

double mandel_slope_prediction(const DeformParams& p) {
  const double q = p.q();
  return -q * (1.0 - q) / (p.scale() * (1.0 + q));
}

MandelSlopeEstimate mandel_slope(const DeformParams& p, double h) {
  if (!(h > 0.0)) throw DomainError("slope probe must be positive");
  MandelSlopeEstimate out;
  out.q_over_x = stats_point(p, h).mandel_q / h;
  const double wide = stats_point(p, 2.0 * h).mandel_q / (2.0 * h);
  out.richardson = 2.0 * out.q_over_x - wide;
  out.predicted = mandel_slope_prediction(p);
  out.rel_error = std::abs(out.q_over_x - out.predicted) / std::abs(out.predicted);
  out.richardson_rel_error = std::abs(out.richardson - out.predicted) / std::abs(out.predicted);
  return out;
}

BosonPair boson_operators(const DeformParams& p, const FockTruncation& t) {
  const auto ops = ladder_matrices(p, t);
  const std::size_t d = t.dim();
  BosonPair out{TridiagonalOperator::zeros(d), TridiagonalOperator::zeros(d)};
  for (std::size_t k = 0; k + 1 < d; ++k) {
    const long m = static_cast<long>(k) + 1;
    const double dressing = std::sqrt(static_cast<double>(m) / structure_function(p, m));
    out.b.sup[k] = ops.a.sup[k] * dressing;
    out.b_dag.sub[k] = dressing * ops.a_dag.sub[k];
  }
  out.b.refresh_hermitian();
  out.b_dag.refresh_hermitian();
  return out;
}

}  // namespace qdeform

#include "qdeform/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qdeform/quadrature.hpp"

namespace qdeform {

namespace {

// Terms are summed until the certified tail is below this fraction of the sum.
constexpr double kSeriesStop = 1e-17;
constexpr std::size_t kMaxSeriesTerms = 200'000'000;

std::string radius_text(const DomainDisk& disk) {
  return disk.finite() ? std::to_string(disk.radius) : std::string("inf");
}

}  // namespace

DomainDisk domain_radius(const DeformParams& p) {
  DomainDisk d;
  if (p.q_above_one()) d.radius = p.scale() / (p.q() - 1.0);
  return d;
}

void check_in_disk(const DeformParams& p, double x) {
  const DomainDisk disk = domain_radius(p);
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("|z|^2 must be finite and nonnegative");
  }
  if (!disk.contains(x)) {
    throw DomainError("|z|^2 = " + std::to_string(x) + " lies outside the coherent-state disk (R = " +
                      radius_text(disk) + ", margin 1e-6)");
  }
}

SeriesEval normalization(const DeformParams& p, double x) {
  check_in_disk(p, x);
  const double phi1 = structure_function(p, 1);
  const double phi2 = structure_function(p, 2);
  SeriesEval out;
  if (x == 0.0) {
    out.value = 1.0;
    out.d1 = 1.0 / phi1;
    out.d2 = 2.0 / (phi1 * phi2);
    return out;
  }

  CompensatedSum<double> value;
  CompensatedSum<double> d1;
  CompensatedSum<double> d2;
  double t = 1.0;                   // c_n x^n
  double e = 1.0 / phi1;            // c_n x^(n-1), n >= 1
  double f = 1.0 / (phi1 * phi2);   // c_n x^(n-2), n >= 2
  double phi_next = phi1;           // phi(n+1)
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    const double dn = static_cast<double>(n);
    value += t;
    if (n >= 1) d1 += dn * e;
    if (n >= 2) d2 += dn * (dn - 1.0) * f;

    const double rho = x / phi_next;
    const double phi_after = structure_function(p, static_cast<long>(n) + 2);
    const double rho_next = x / phi_after;
    const double t_next = t * rho;
    const double e_next = n == 0 ? e : e * rho;
    const double f_next = n <= 1 ? f : f * rho;

    if (!std::isfinite(value.value())) {
      throw OverflowError("normalization series overflows at x = " + std::to_string(x) +
                          "; use log_normalization");
    }
    if (n >= 2) {
      // Term ratios decrease with the index, so the ratio at n+1 bounds every
      // later ratio.
      const double r_v = rho_next;
      const double r_d1 = rho_next * (dn + 2.0) / (dn + 1.0);
      const double r_d2 = rho_next * (dn + 2.0) / dn;
      if (r_d2 < 1.0) {
        const double tail_v = t_next / (1.0 - r_v);
        const double tail_d1 = (dn + 1.0) * e_next / (1.0 - r_d1);
        const double tail_d2 = (dn + 1.0) * dn * f_next / (1.0 - r_d2);
        if (tail_v <= kSeriesStop * value.value() && tail_d1 <= kSeriesStop * d1.value() &&
            tail_d2 <= kSeriesStop * d2.value()) {
          out.value = value.value();
          out.d1 = d1.value();
          out.d2 = d2.value();
          out.tail_bound = tail_v;
          out.d1_tail_bound = tail_d1;
          out.d2_tail_bound = tail_d2;
          out.terms_used = n + 1;
          return out;
        }
      }
    }
    t = t_next;
    e = e_next;
    f = f_next;
    phi_next = phi_after;
  }
  throw ConvergenceError("normalization series did not converge at x = " + std::to_string(x));
}

LogSeriesEval log_normalization(const DeformParams& p, double x) {
  check_in_disk(p, x);
  if (x == 0.0) return {};
  const double log_x = std::log(x);
  std::vector<double> logs{0.0};
  double log_max = 0.0;
  double log_term = 0.0;
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    log_term += log_x - std::log(structure_function(p, static_cast<long>(n) + 1));
    logs.push_back(log_term);
    log_max = std::max(log_max, log_term);
    const double rho_next = x / structure_function(p, static_cast<long>(n) + 2);
    if (rho_next < 1.0) {
      const double rel_tail = std::exp(log_term - log_max) / (1.0 - rho_next);
      if (rel_tail <= kSeriesStop) {
        CompensatedSum<double> acc;
        for (double l : logs) acc += std::exp(l - log_max);
        const double sum = acc.value();
        return {log_max + std::log(sum), rel_tail / sum, logs.size()};
      }
    }
  }
  throw ConvergenceError("log normalization did not converge at x = " + std::to_string(x));
}

ComplexSeriesEval normalization_complex(const DeformParams& p, std::complex<double> w) {
  check_in_disk(p, std::abs(w));
  ComplexSeriesEval out;
  if (w == std::complex<double>(0.0, 0.0)) return out;
  const double mod = std::abs(w);
  CompensatedSum<std::complex<double>> sum;
  CompensatedSum<double> mass;
  std::complex<double> t(1.0, 0.0);
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    sum += t;
    mass += std::abs(t);
    t *= w / structure_function(p, static_cast<long>(n) + 1);
    const double r_next = mod / structure_function(p, static_cast<long>(n) + 2);
    if (r_next < 1.0) {
      const double tail = std::abs(t) / (1.0 - r_next);
      if (tail <= kSeriesStop * mass.value()) {
        out.value = sum.value();
        out.tail_bound = tail;
        out.terms_used = n + 1;
        return out;
      }
    }
  }
  throw ConvergenceError("complex normalization series did not converge");
}

TailEval normalization_tail(const DeformParams& p, double x, std::size_t start) {
  check_in_disk(p, x);
  if (start == 0) {
    const auto full = normalization(p, x);
    return {full.value, full.tail_bound};
  }
  if (x == 0.0) return {};
  double log_t = 0.0;
  for (std::size_t k = 1; k <= start; ++k) {
    log_t += std::log(x) - std::log(structure_function(p, static_cast<long>(k)));
  }
  double t = std::exp(log_t);
  CompensatedSum<double> acc;
  for (std::size_t n = start; n < start + kMaxSeriesTerms; ++n) {
    acc += t;
    t *= x / structure_function(p, static_cast<long>(n) + 1);
    const double r_next = x / structure_function(p, static_cast<long>(n) + 2);
    if (r_next < 1.0) {
      const double tail = t / (1.0 - r_next);
      if (tail <= kSeriesStop * acc.value() || acc.value() == 0.0) {
        return {acc.value(), tail};
      }
    }
  }
  throw ConvergenceError("normalization tail did not converge");
}

CoherentState amplitudes(const DeformParams& p, std::complex<double> z, const FockTruncation& t) {
  const double x = std::norm(z);
  const SeriesEval norm = normalization(p, x);
  CoherentState st{z, p, t.dim(), std::vector<std::complex<double>>(t.dim()), norm.value};
  if (x == 0.0) {
    st.amplitudes[0] = 1.0;
    return st;
  }
  const double theta = std::arg(z);
  double term = 1.0;  // c_n x^n
  for (std::size_t n = 0; n < t.dim(); ++n) {
    st.amplitudes[n] = std::polar(std::sqrt(term / norm.value), static_cast<double>(n) * theta);
    term *= x / structure_function(p, static_cast<long>(n) + 1);
  }
  const TailEval tail = normalization_tail(p, x, t.dim());
  st.tail_residual = tail.value / norm.value;
  st.tail_bound = (tail.value + tail.bound) / norm.value * (1.0 + norm.tail_bound / norm.value) +
                  4.0 * std::numeric_limits<double>::epsilon() * st.tail_residual;
  st.truncation_warning = st.tail_residual > 1e-10;
  return st;
}

std::complex<double> overlap(const DeformParams& p, std::complex<double> z1, std::complex<double> z2) {
  const double n1 = normalization(p, std::norm(z1)).value;
  const double n2 = normalization(p, std::norm(z2)).value;
  const auto kernel = normalization_complex(p, std::conj(z1) * z2);
  return kernel.value / std::sqrt(n1 * n2);
}

double eigen_residual(const DeformParams& p, std::complex<double> z, const FockTruncation& t) {
  const CoherentState st = amplitudes(p, z, t);
  const auto ops = ladder_matrices(p, t);
  const auto image = ops.a.apply(st.amplitudes);
  CompensatedSum<double> acc;
  for (std::size_t m = 0; m + 1 < t.dim(); ++m) {
    acc += std::norm(image[m] - z * st.amplitudes[m]);
  }
  return std::sqrt(acc.value());
}

double unity_weight(const DeformParams& p, double x) {
  const DomainDisk disk = domain_radius(p);
  if (!(x > 0.0) || !(x < disk.radius)) {
    throw DomainError("unity weight needs 0 < x < R (R = " + radius_text(disk) + ")");
  }
  const double q = p.q();
  const double s = p.scale();
  if (p.q_above_one()) {
    return 1.0 / (2.0 * std::numbers::pi * (1.0 - (q - 1.0) * x / s));
  }
  const double prefactor = (1.0 - q) / (s * std::log(1.0 / q));
  return prefactor * std::exp(log_normalization(p, x).log_value - log_normalization(p, x / q).log_value);
}

double moment_target(const DeformParams& p, long n) {
  if (n < 0) throw DomainError("moment order must be >= 0");
  const double q = p.q();
  const double dn = static_cast<double>(n);
  const double log_target = dn * std::log(p.scale()) - 0.5 * dn * (dn + 1.0) * std::log(q) +
                            log_q_factorial(n, q);
  const double v = std::exp(log_target);
  if (!std::isfinite(v)) throw OverflowError("moment target overflows at n = " + std::to_string(n));
  return v;
}

double MomentReport::max_rel_error() const {
  double m = 0.0;
  for (double e : rel_error) m = std::max(m, e);
  return m;
}

namespace {

void lattice_moment(const DeformParams& p, long n, const MomentConfig& cfg, MomentReport& rep) {
  const double q = p.q();
  const double radius = domain_radius(p).radius;
  const double target = moment_target(p, n);
  const auto integrand = [&](double x) {
    return std::pow(x, static_cast<double>(n)) / normalization(p, x / q).value;
  };
  QIntegralOptions opts;
  opts.abs_tol = cfg.rel_tol * target;
  // N >= 1 on [0, R), so x^n bounds the integrand.
  opts.sup_on_interval = [n](double xm) { return std::pow(xm, static_cast<double>(n)); };
  const LatticeSum sum = q_integral(integrand, p, radius, opts);
  rep.computed.push_back(sum.value);
  rep.error_estimate.push_back(sum.tail_bound);
  rep.cutoff.push_back(radius);
}

// C q^k / c_k * X^(n+1-k) / (k-n-1), minimised over k: bounds the integral of
// C x^n / N(x/q) beyond X because N(u) >= c_k u^k termwise.
double stieltjes_remainder_log(const DeformParams& p, long n, double log_prefactor, double log_cutoff) {
  const double log_q = std::log(p.q());
  double log_inv_coeff = 0.0;  // -log c_k = sum_{m<=k} log phi(m)
  double best = std::numeric_limits<double>::infinity();
  for (long k = 1; k <= n + 240; ++k) {
    log_inv_coeff += std::log(structure_function(p, k));
    if (k < n + 2) continue;
    const double dk = static_cast<double>(k);
    const double dn = static_cast<double>(n);
    const double v = log_prefactor + dk * log_q + log_inv_coeff + (dn + 1.0 - dk) * log_cutoff -
                     std::log(dk - dn - 1.0);
    best = std::min(best, v);
  }
  return best;
}

void stieltjes_moment(const DeformParams& p, long n, const MomentConfig& cfg, MomentReport& rep) {
  const double q = p.q();
  const double s = p.scale();
  const double target = moment_target(p, n);
  const double log_prefactor = std::log((1.0 - q) / (s * std::log(1.0 / q)));
  const double dn = static_cast<double>(n);
  const auto log_integrand = [&](double x) {
    return log_prefactor + dn * std::log(x) - log_normalization(p, x / q).log_value;
  };

  double log_cutoff = std::log(s);
  double log_rem = std::numeric_limits<double>::infinity();
  const double log_goal = std::log(cfg.remainder_rel * target);
  for (int step = 0; step < 4000 && !(log_rem <= log_goal); ++step) {
    log_cutoff += 0.25;
    log_rem = stieltjes_remainder_log(p, n, log_prefactor, log_cutoff);
  }
  if (!(log_rem <= log_goal)) {
    throw ConvergenceError("could not certify the moment remainder for n = " + std::to_string(n));
  }

  const double abs_tol = 0.5 * cfg.rel_tol * target;
  const auto near = integrate_adaptive(
      [&](double x) {
        if (x == 0.0) return n == 0 ? std::exp(log_prefactor) : 0.0;
        return std::exp(log_integrand(x));
      },
      0.0, s, abs_tol, cfg.rel_tol, cfg.max_intervals);
  // Beyond x = s integrate in u = log x, where the integrand is log-normal-like.
  const auto far = integrate_adaptive(
      [&](double u) {
        const double x = std::exp(u);
        return std::exp(u + log_integrand(x));
      },
      std::log(s), log_cutoff, abs_tol, cfg.rel_tol, cfg.max_intervals);

  rep.computed.push_back(near.value + far.value);
  rep.error_estimate.push_back(near.abs_error + far.abs_error + std::exp(log_rem));
  rep.cutoff.push_back(std::exp(log_cutoff));
}

}  // namespace

MomentReport verify_moments(const DeformParams& p, long n_max, const MomentConfig& cfg) {
  if (n_max < 0) throw DomainError("moment order must be >= 0");
  MomentReport rep;
  rep.regime = p.q_above_one() ? MomentRegime::kHausdorff : MomentRegime::kStieltjes;
  for (long n = 0; n <= n_max; ++n) {
    if (rep.regime == MomentRegime::kHausdorff) {
      lattice_moment(p, n, cfg, rep);
    } else {
      stieltjes_moment(p, n, cfg, rep);
    }
    const double target = moment_target(p, n);
    rep.orders.push_back(n);
    rep.target.push_back(target);
    rep.rel_error.push_back(std::abs(rep.computed.back() - target) / target);
  }
  return rep;
}

}  // namespace qdeform

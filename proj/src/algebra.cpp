#include "qdeform/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdeform/extended.hpp"
#include "qdeform/qcore.hpp"

namespace qdeform {

FockTruncation::FockTruncation(std::size_t dim, std::size_t max_dim) : dim_(dim) {
  if (dim < 2) throw DomainError("Fock truncation needs at least 2 states");
  if (dim > max_dim) {
    throw DomainError("Fock truncation " + std::to_string(dim) + " exceeds the maximum " +
                      std::to_string(max_dim));
  }
}

LadderSet<double> ladder_matrices(const DeformParams& p, const FockTruncation& t) {
  auto ops = ladder_matrices_t<double>(p, t);
  for (double v : ops.a.sup) {
    if (!std::isfinite(v)) {
      throw OverflowError("ladder coefficients overflow double for this truncation; use ExtendedReal");
    }
  }
  return ops;
}

std::vector<double> commutator_defect(const DeformParams& p, const FockTruncation& t) {
  ladder_matrices(p, t);  // overflow check
  return commutator_defect_t<double>(p, t);
}

PositionMomentum position_momentum(const DeformParams& p, const FockTruncation& t,
                                   const PhysicalUnits& units) {
  if (!(units.hbar > 0.0) || !(units.mass > 0.0) || !(units.omega > 0.0)) {
    throw DomainError("hbar, mass and omega must be positive");
  }
  const auto ops = ladder_matrices(p, t);
  const double x_scale = std::sqrt(units.hbar / (2.0 * units.mass * units.omega));
  const double p_scale = std::sqrt(units.mass * units.hbar * units.omega / 2.0);
  const std::size_t d = t.dim();

  PositionMomentum out{TridiagonalOperator::zeros(d), TridiagonalOperator::zeros(d, Phase::kImaginary)};
  for (std::size_t k = 0; k + 1 < d; ++k) {
    const double xk = ops.a.sup[k];
    out.x.sup[k] = x_scale * xk;
    out.x.sub[k] = x_scale * xk;
    // P = -i p_scale (a - a^dag): (k, k+1) -> -i p_scale x, (k+1, k) -> +i p_scale x.
    out.p.sup[k] = -p_scale * xk;
    out.p.sub[k] = p_scale * xk;
  }
  out.x.refresh_hermitian();
  out.p.refresh_hermitian();
  return out;
}

std::vector<SpectrumRow> spectrum(const DeformParams& p, long n_max, const PhysicalUnits& units) {
  if (n_max < 0) throw DomainError("spectrum needs n_max >= 0");
  if (!(units.hbar > 0.0) || !(units.mass > 0.0) || !(units.omega > 0.0)) {
    throw DomainError("hbar, mass and omega must be positive");
  }
  const double q = p.q();
  const double s = p.scale();
  const double hbar_omega = units.hbar * units.omega;
  const double x_unit = units.hbar / (2.0 * units.mass * units.omega);
  const double p_unit = units.mass * units.hbar * units.omega / 2.0;

  std::vector<SpectrumRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) {
    SpectrumRow row;
    row.n = n;
    const double level = s * std::pow(q, static_cast<double>(-n - 1)) *
                         (q * q_number_unchecked(n, q) + q_number_unchecked(n + 1, q));
    row.energy = 0.5 * hbar_omega * level;
    // <n|(a + a^dag)^2|n> = x_n^2 + x_{n+1}^2
    const double sq = structure_function(p, n) + structure_function(p, n + 1);
    row.var_x = x_unit * sq;
    row.var_p = p_unit * sq;
    row.uncertainty_product = std::sqrt(row.var_x * row.var_p);
    if (!std::isfinite(row.energy) || !std::isfinite(row.uncertainty_product)) {
      throw OverflowError("spectrum overflows double at n = " + std::to_string(n));
    }
    rows.push_back(row);
  }
  return rows;
}

BoundednessReport boundedness_diagnostic(const DeformParams& p, long probe_n) {
  if (probe_n < 2) throw DomainError("boundedness probe needs probe_n >= 2");
  BoundednessReport out;
  const auto x = ladder_coefficients_t<double>(p, static_cast<std::size_t>(probe_n) + 2);
  for (long n = 1; n <= probe_n; ++n) out.max_coefficient = std::max(out.max_coefficient, x[n]);
  out.tail_ratio = x[probe_n] / x[probe_n + 1];

  if (p.q_above_one()) {
    const double sup = std::sqrt(p.scale() / (p.q() - 1.0));
    out.sup_bound = sup;
    // In double, x_n rounds onto the supremum once q^{-n} drops below the
    // epsilon, so the strict comparison runs in extended precision.
    const auto xe = ladder_coefficients_t<ExtendedReal>(p, static_cast<std::size_t>(probe_n) + 1);
    const ExtendedReal sup_e = sqrt(scale_of<ExtendedReal>(p) / (ExtendedReal(p.q()) - 1));
    out.bounded = true;
    for (long n = 1; n <= probe_n; ++n) {
      if (!(xe[n] < sup_e)) out.bounded = false;
    }
  } else {
    out.bounded = false;
    CompensatedSum<double> acc;
    for (long n = 1; n <= probe_n; ++n) acc += 1.0 / x[n];
    out.reciprocal_sum_estimate = acc.value();
    out.ratio_limit = std::sqrt(p.q());
  }
  return out;
}

}  // namespace qdeform

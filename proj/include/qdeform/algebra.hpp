#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qdeform/params.hpp"
#include "qdeform/qarith.hpp"

namespace qdeform {

/// Number of retained Fock states |0>..|D-1>.
class FockTruncation {
 public:
  static constexpr std::size_t kDefaultMax = 4096;

  explicit FockTruncation(std::size_t dim, std::size_t max_dim = kDefaultMax);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
};

/// Whether the stored coefficients are the matrix itself or i times it.
enum class Phase { kReal, kImaginary };

/// Tridiagonal operator on a truncated Fock space. Entry (k, k+1) is sup[k],
/// entry (k+1, k) is sub[k]; with Phase::kImaginary every entry carries an
/// extra factor of i, which is how the momentum operator stays real-valued.
template <class Real>
struct BasicTridiagonal {
  std::size_t dim = 0;
  std::vector<Real> sub;
  std::vector<Real> diag;
  std::vector<Real> sup;
  Phase phase = Phase::kReal;
  bool hermitian = false;

  static BasicTridiagonal zeros(std::size_t d, Phase ph = Phase::kReal) {
    BasicTridiagonal t;
    t.dim = d;
    t.sub.assign(d - 1, Real(0));
    t.diag.assign(d, Real(0));
    t.sup.assign(d - 1, Real(0));
    t.phase = ph;
    return t;
  }

  /// Recompute `hermitian` from the coefficients (exact comparison).
  void refresh_hermitian() {
    hermitian = true;
    for (std::size_t k = 0; k + 1 < dim; ++k) {
      const bool ok = phase == Phase::kReal ? sub[k] == sup[k] : sub[k] == -sup[k];
      if (!ok) {
        hermitian = false;
        return;
      }
    }
    if (phase == Phase::kImaginary) {
      for (const auto& d : diag) {
        if (d != Real(0)) {
          hermitian = false;
          return;
        }
      }
    }
  }

  [[nodiscard]] std::complex<double> entry(std::size_t row, std::size_t col) const {
    double v = 0.0;
    if (row == col) {
      v = static_cast<double>(diag[row]);
    } else if (col == row + 1) {
      v = static_cast<double>(sup[row]);
    } else if (row == col + 1) {
      v = static_cast<double>(sub[col]);
    }
    return phase == Phase::kReal ? std::complex<double>(v, 0.0) : std::complex<double>(0.0, v);
  }

  /// <n| M^2 |n>, real for both phases.
  [[nodiscard]] Real square_diagonal(std::size_t n) const {
    Real acc = diag[n] * diag[n];
    if (n > 0) acc += sub[n - 1] * sup[n - 1];
    if (n + 1 < dim) acc += sup[n] * sub[n];
    return phase == Phase::kReal ? acc : -acc;
  }

  /// <n| A B |n> for two operators on the same truncation.
  [[nodiscard]] Real product_diagonal(const BasicTridiagonal& right, std::size_t n) const {
    Real acc = diag[n] * right.diag[n];
    if (n > 0) acc += sub[n - 1] * right.sup[n - 1];
    if (n + 1 < dim) acc += sup[n] * right.sub[n];
    const bool flip = phase == Phase::kImaginary && right.phase == Phase::kImaginary;
    return flip ? -acc : acc;
  }

  /// M v for a complex vector of length dim.
  [[nodiscard]] std::vector<std::complex<double>> apply(
      const std::vector<std::complex<double>>& v) const {
    std::vector<std::complex<double>> out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      std::complex<double> acc = static_cast<double>(diag[r]) * v[r];
      if (r > 0) acc += static_cast<double>(sub[r - 1]) * v[r - 1];
      if (r + 1 < dim) acc += static_cast<double>(sup[r]) * v[r + 1];
      out[r] = phase == Phase::kReal ? acc : std::complex<double>(0.0, 1.0) * acc;
    }
    return out;
  }
};

using TridiagonalOperator = BasicTridiagonal<double>;

template <class Real>
struct LadderSet {
  BasicTridiagonal<Real> a;
  BasicTridiagonal<Real> a_dag;
  BasicTridiagonal<Real> n_op;
};

/// x_n = sqrt(phi(n)) for n = 0..count-1 (x_0 = 0).
template <class Real>
std::vector<Real> ladder_coefficients_t(const DeformParams& p, std::size_t count) {
  using std::sqrt;
  std::vector<Real> x(count, Real(0));
  for (std::size_t n = 1; n < count; ++n) {
    x[n] = sqrt(structure_function_t<Real>(p, static_cast<long>(n)));
  }
  return x;
}

template <class Real>
LadderSet<Real> ladder_matrices_t(const DeformParams& p, const FockTruncation& t) {
  const std::size_t d = t.dim();
  const auto x = ladder_coefficients_t<Real>(p, d);
  LadderSet<Real> out{BasicTridiagonal<Real>::zeros(d), BasicTridiagonal<Real>::zeros(d),
                      BasicTridiagonal<Real>::zeros(d)};
  for (std::size_t k = 0; k + 1 < d; ++k) {
    out.a.sup[k] = x[k + 1];
    out.a_dag.sub[k] = x[k + 1];
  }
  for (std::size_t k = 0; k < d; ++k) out.n_op.diag[k] = Real(static_cast<long>(k));
  out.a.refresh_hermitian();
  out.a_dag.refresh_hermitian();
  out.n_op.refresh_hermitian();
  return out;
}

/// <n|(a a^dag - a^dag a - l^2 q^(-N + lambda - 1))|n> for n = 0..D-2, read off
/// the assembled matrices. Row D-1 is the truncation edge and is omitted.
template <class Real>
std::vector<Real> commutator_defect_t(const DeformParams& p, const FockTruncation& t) {
  const auto ops = ladder_matrices_t<Real>(p, t);
  std::vector<Real> out(t.dim() - 1);
  for (std::size_t n = 0; n + 1 < t.dim(); ++n) {
    out[n] = ops.a.product_diagonal(ops.a_dag, n) - ops.a_dag.product_diagonal(ops.a, n) -
             commutator_value_t<Real>(p, static_cast<long>(n));
  }
  return out;
}

LadderSet<double> ladder_matrices(const DeformParams& p, const FockTruncation& t);
std::vector<double> commutator_defect(const DeformParams& p, const FockTruncation& t);

struct PhysicalUnits {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
};

struct PositionMomentum {
  TridiagonalOperator x;
  /// Stored with Phase::kImaginary.
  TridiagonalOperator p;
};

PositionMomentum position_momentum(const DeformParams& p, const FockTruncation& t,
                                   const PhysicalUnits& units = {});

struct SpectrumRow {
  long n = 0;
  /// Energy eigenvalue in the same units as hbar * omega.
  double energy = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  /// sqrt(var_x * var_p), in units of hbar (not hbar/2).
  double uncertainty_product = 0.0;
};

std::vector<SpectrumRow> spectrum(const DeformParams& p, long n_max, const PhysicalUnits& units = {});

struct BoundednessReport {
  bool bounded = false;
  /// sqrt(l^2 q^lambda / (q - 1)), q > 1 only.
  std::optional<double> sup_bound;
  double max_coefficient = 0.0;
  /// sum_{n=1..probe_n} 1/x_n, q < 1 only.
  std::optional<double> reciprocal_sum_estimate;
  /// (1/x_{probe_n+1}) / (1/x_{probe_n}).
  double tail_ratio = 0.0;
  /// sqrt(q) for q < 1.
  std::optional<double> ratio_limit;
};

BoundednessReport boundedness_diagnostic(const DeformParams& p, long probe_n);

}  // namespace qdeform

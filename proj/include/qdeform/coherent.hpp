#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "qdeform/algebra.hpp"
#include "qdeform/params.hpp"
#include "qdeform/qcore.hpp"

namespace qdeform {

/// |z|^2 / R may not exceed 1 - kDiskMargin when R is finite.
inline constexpr double kDiskMargin = 1e-6;

struct DomainDisk {
  /// Bound on |z|^2; +inf for 0 < q < 1.
  double radius = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool finite() const noexcept { return radius < std::numeric_limits<double>::infinity(); }
  /// Largest admissible |z|^2.
  [[nodiscard]] double admissible_limit() const noexcept {
    return finite() ? radius * (1.0 - kDiskMargin) : radius;
  }
  [[nodiscard]] bool contains(double x) const noexcept { return x >= 0.0 && x <= admissible_limit(); }
};

DomainDisk domain_radius(const DeformParams& p);

/// Throws DomainError (naming R) unless 0 <= x <= admissible_limit.
void check_in_disk(const DeformParams& p, double x);

/// N(x) = sum_n q^{n(n+1)/2} x^n / ((l^2 q^lambda)^n [n]_q!) with N', N''.
SeriesEval normalization(const DeformParams& p, double x);

struct LogSeriesEval {
  double log_value = 0.0;
  /// Relative bound on the omitted tail.
  double rel_tail_bound = 0.0;
  std::size_t terms_used = 1;
};

/// log N(x), usable far beyond the point where N(x) overflows (0 < q < 1).
LogSeriesEval log_normalization(const DeformParams& p, double x);

struct ComplexSeriesEval {
  std::complex<double> value{1.0, 0.0};
  double tail_bound = 0.0;
  std::size_t terms_used = 1;
};

/// The same power series at a complex point inside the disk.
ComplexSeriesEval normalization_complex(const DeformParams& p, std::complex<double> w);

/// sum_{n >= start} of the normalization terms at x, plus a bound on what the
/// evaluation itself omitted.
struct TailEval {
  double value = 0.0;
  double bound = 0.0;
};
TailEval normalization_tail(const DeformParams& p, double x, std::size_t start);

struct CoherentState {
  std::complex<double> z;
  DeformParams params;
  std::size_t dim = 0;
  std::vector<std::complex<double>> amplitudes;
  double norm_value = 1.0;
  /// 1 - sum_{n<D} |c_n|^2, summed directly from the omitted terms.
  double tail_residual = 0.0;
  /// Upper bound on tail_residual including evaluation error.
  double tail_bound = 0.0;
  /// Set when tail_residual > 1e-10.
  bool truncation_warning = false;
};

CoherentState amplitudes(const DeformParams& p, std::complex<double> z, const FockTruncation& t);

/// <z1|z2> = N(conj(z1) z2) / sqrt(N(|z1|^2) N(|z2|^2)).
std::complex<double> overlap(const DeformParams& p, std::complex<double> z1, std::complex<double> z2);

/// ||(a - z)|z>_D|| over rows 0..D-2 of the truncated space.
double eigen_residual(const DeformParams& p, std::complex<double> z, const FockTruncation& t);

/// Radial density of the resolution-of-unity measure at x = |z|^2.
/// q < 1: density against d^2z/pi; q > 1: density against d_q x dtheta.
double unity_weight(const DeformParams& p, double x);

/// (l^2 q^lambda)^n q^{-n(n+1)/2} [n]_q!
double moment_target(const DeformParams& p, long n);

enum class MomentRegime { kStieltjes, kHausdorff };

struct MomentConfig {
  /// Relative tolerance for the quadrature / lattice sums.
  double rel_tol = 1e-12;
  /// The q < 1 cutoff is pushed out until the certified remainder is below
  /// remainder_rel * target.
  double remainder_rel = 1e-10;
  std::size_t max_intervals = 4000;
};

struct MomentReport {
  std::vector<long> orders;
  std::vector<double> computed;
  std::vector<double> target;
  std::vector<double> rel_error;
  /// Quadrature/lattice error estimate plus the certified remainder.
  std::vector<double> error_estimate;
  /// Integration cutoff used for q < 1 (+inf for q > 1).
  std::vector<double> cutoff;
  MomentRegime regime = MomentRegime::kHausdorff;

  [[nodiscard]] double max_rel_error() const;
};

MomentReport verify_moments(const DeformParams& p, long n_max, const MomentConfig& cfg = {});

}  // namespace qdeform

#pragma once

#include <stdexcept>
#include <string>

namespace qdeform {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative evaluation (series, lattice sum, quadrature) failed to meet
/// its stopping rule within the configured budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result would leave the finite double range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Half-width of the rejected band around q = 1.
inline constexpr double kQExclusionBand = 1e-12;

/// Deformation triple (q, l, lambda).
///
/// Validated on construction: q > 0 with |q - 1| > 1e-12, l != 0, and the
/// derived scale l^2 q^lambda positive and finite. Immutable afterwards.
class DeformParams {
 public:
  DeformParams(double q, double l, double lambda);

  [[nodiscard]] double q() const noexcept { return q_; }
  [[nodiscard]] double l() const noexcept { return l_; }
  [[nodiscard]] double lambda() const noexcept { return lambda_; }

  /// l^2 q^lambda, the factor that multiplies every structure-function value.
  [[nodiscard]] double scale() const noexcept { return scale_; }

  /// True in the bounded regime (finite coherent-state disk).
  [[nodiscard]] bool q_above_one() const noexcept { return q_ > 1.0; }

  /// The same q with l = 1, lambda = 0.
  [[nodiscard]] DeformParams base_case() const { return {q_, 1.0, 0.0}; }

  [[nodiscard]] std::string describe() const;

  friend bool operator==(const DeformParams&, const DeformParams&) = default;

 private:
  double q_;
  double l_;
  double lambda_;
  double scale_;
};

}  // namespace qdeform

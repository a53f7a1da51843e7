#pragma once

// Generic q-arithmetic kernels. Instantiated for double by the library and for
// ExtendedReal (see extended.hpp) where identities must be resolved below the
// double rounding floor.

#include <cmath>
#include <complex>
#include <type_traits>

#include "qdeform/params.hpp"

namespace qdeform {

namespace detail {

template <class Real>
inline constexpr bool kNativeFloat = std::is_floating_point_v<Real>;

}  // namespace detail

/// q^k - 1 without cancellation when q is close to 1.
template <class Real>
Real pow_minus_one(const Real& q, long k) {
  using std::abs;
  using std::pow;
  if (k == 0) return Real(0);
  if constexpr (detail::kNativeFloat<Real>) {
    if (abs(q - Real(1)) < Real(0.5)) {
      return std::expm1(static_cast<Real>(k) * std::log1p(q - Real(1)));
    }
    return pow(q, static_cast<Real>(k)) - Real(1);
  } else {
    return pow(q, Real(k)) - Real(1);
  }
}

/// [n]_q = (1 - q^n)/(1 - q) for n >= 0. No domain checks.
template <class Real>
Real q_number_unchecked(long n, const Real& q) {
  if (n == 0) return Real(0);
  if (n == 1) return Real(1);
  return pow_minus_one(q, n) / (q - Real(1));
}

template <class Real>
Real scale_of(const DeformParams& p) {
  using std::pow;
  if constexpr (detail::kNativeFloat<Real>) {
    return static_cast<Real>(p.scale());
  } else {
    const Real l(p.l());
    return l * l * pow(Real(p.q()), Real(p.lambda()));
  }
}

/// phi(n) = l^2 q^lambda (1 - q^-n)/(q - 1) = l^2 q^(lambda-n) [n]_q.
template <class Real>
Real structure_function_t(const DeformParams& p, long n) {
  if (n <= 0) return Real(0);
  const Real q(p.q());
  return -scale_of<Real>(p) * pow_minus_one(q, -n) / (q - Real(1));
}

/// l^2 q^(lambda - n - 1), the commutator value on |n>.
template <class Real>
Real commutator_value_t(const DeformParams& p, long n) {
  using std::pow;
  const Real q(p.q());
  if constexpr (detail::kNativeFloat<Real>) {
    return scale_of<Real>(p) * pow(q, static_cast<Real>(-n - 1));
  } else {
    return scale_of<Real>(p) * pow(q, Real(-n - 1));
  }
}

/// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  void add(T v) {
    using std::abs;
    const T t = sum_ + v;
    if (abs(sum_) >= abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(T v) {
    add(v);
    return *this;
  }

  [[nodiscard]] T value() const { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

template <class T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  CompensatedSum& operator+=(std::complex<T> v) {
    add(v);
    return *this;
  }
  [[nodiscard]] std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

}  // namespace qdeform

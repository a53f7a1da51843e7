#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qdeform/coherent.hpp"
#include "qdeform/extended.hpp"
#include "support.hpp"

using namespace qdeform;
using qdeform::testing::rel_err;

namespace {

// Brute-force N and its derivatives from the q-factorial form of the
// coefficients, in extended precision.
struct Brute {
  double value, d1, d2;
};

Brute brute_normalization(const DeformParams& p, double x, int terms) {
  const ExtendedReal q(p.q());
  const ExtendedReal s = scale_of<ExtendedReal>(p);
  const ExtendedReal xe(x);
  ExtendedReal v = 0, d1 = 0, d2 = 0, fact = 1;
  for (int n = 0; n < terms; ++n) {
    if (n > 0) fact *= q_number_unchecked<ExtendedReal>(n, q);
    const ExtendedReal c = pow(q, ExtendedReal(n) * (n + 1) / 2) / (pow(s, n) * fact);
    v += c * pow(xe, n);
    if (n >= 1) d1 += c * n * pow(xe, n - 1);
    if (n >= 2) d2 += c * n * (n - 1) * pow(xe, n - 2);
  }
  return {static_cast<double>(v), static_cast<double>(d1), static_cast<double>(d2)};
}

}  // namespace

TEST_CASE("domain radius") {
  CHECK(domain_radius(DeformParams(2.0, 1.0, 0.0)).radius == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(domain_radius(DeformParams(3.0, 2.0, 1.0)).radius == doctest::Approx(6.0).epsilon(1e-15));
  CHECK_FALSE(domain_radius(DeformParams(0.5, 1.0, 0.0)).finite());
  CHECK_THROWS_AS(check_in_disk(DeformParams(2.0, 1.0, 0.0), 1.5), DomainError);
  CHECK_THROWS_AS(check_in_disk(DeformParams(2.0, 1.0, 0.0), 1.0), DomainError);
  CHECK_NOTHROW(check_in_disk(DeformParams(2.0, 1.0, 0.0), 0.999));
  CHECK_THROWS_AS(check_in_disk(DeformParams(0.5, 1.0, 0.0), -0.1), DomainError);
}

TEST_CASE("normalization against brute-force summation") {
  for (bool above : {false, true}) {
    for (const auto& p : qdeform::testing::random_params(12, above ? 31 : 32, above)) {
      const double r = domain_radius(p).radius;
      for (double frac : {0.0, 0.05, 0.3, 0.7}) {
        const double x = above ? frac * r : 4.0 * frac * p.scale();
        const auto got = normalization(p, x);
        const auto want = brute_normalization(p, x, above ? 3000 : 200);
        CHECK(rel_err(got.value, want.value) < 1e-13);
        CHECK(rel_err(got.d1, want.d1) < 1e-13);
        CHECK(rel_err(got.d2, want.d2) < 1e-13);
        CHECK(got.tail_bound <= 1e-16 * got.value);
      }
    }
  }
}

TEST_CASE("log normalization agrees where both exist and extends past overflow") {
  const DeformParams p(0.5, 1.0, 0.0);
  for (double x : {0.1, 1.0, 10.0, 100.0}) {
    const double want = std::log(normalization(p, x).value);
    CHECK(std::abs(log_normalization(p, x).log_value - want) < 1e-13 * std::max(1.0, want));
  }
  const double big = log_normalization(p, 1e8).log_value;
  CHECK(std::isfinite(big));
  // ln N grows like (ln x)^2 / (2 ln(1/q)) for q < 1.
  const double lx = std::log(1e8);
  CHECK(big / (lx * lx / (2.0 * std::log(2.0))) == doctest::Approx(1.0).epsilon(0.3));
}

TEST_CASE("complex evaluation reduces to the real one") {
  const DeformParams p(2.0, 1.0, 0.0);
  for (double x : {0.1, 0.5, 0.9}) {
    const auto c = normalization_complex(p, {x, 0.0});
    CHECK(rel_err(c.value.real(), normalization(p, x).value) < 1e-14);
    CHECK(c.value.imag() == 0.0);
  }
  // Conjugation symmetry.
  const auto w = normalization_complex(p, std::polar(0.6, 1.1));
  const auto wc = normalization_complex(p, std::polar(0.6, -1.1));
  CHECK(std::abs(w.value - std::conj(wc.value)) < 1e-15);
}

TEST_CASE("coherent amplitudes: normalization and tail") {
  const DeformParams p(0.5, 1.0, 0.0);
  const std::complex<double> z(0.3, 0.25);
  const auto cs = amplitudes(p, z, FockTruncation(40));
  double sum = 0.0;
  for (const auto& c : cs.amplitudes) sum += std::norm(c);
  CHECK(std::abs(sum - (1.0 - cs.tail_residual)) <= 1e-15);
  CHECK(cs.tail_residual <= cs.tail_bound);
  CHECK_FALSE(cs.truncation_warning);
  // c_1 / c_0 = z / sqrt(phi(1))
  CHECK(std::abs(cs.amplitudes[1] / cs.amplitudes[0] - z / std::sqrt(structure_function(p, 1))) < 1e-15);

  const auto small = amplitudes(DeformParams(1.2, 1.0, 0.0), {2.0, 0.0}, FockTruncation(4));
  CHECK(small.truncation_warning);

  const auto vac = amplitudes(p, 0.0, FockTruncation(8));
  CHECK(vac.amplitudes[0] == std::complex<double>(1.0));
  for (std::size_t n = 1; n < 8; ++n) CHECK(vac.amplitudes[n] == std::complex<double>(0.0));
}

TEST_CASE("overlap") {
  const DeformParams p(2.0, 1.0, 0.0);
  const std::complex<double> z1(0.3, 0.2), z2(-0.1, 0.5);
  CHECK(std::abs(overlap(p, z1, z1) - 1.0) < 1e-15);
  // Against the truncated amplitudes.
  const auto a = amplitudes(p, z1, FockTruncation(200));
  const auto b = amplitudes(p, z2, FockTruncation(200));
  std::complex<double> dot = 0.0;
  for (std::size_t n = 0; n < 200; ++n) dot += std::conj(a.amplitudes[n]) * b.amplitudes[n];
  CHECK(std::abs(overlap(p, z1, z2) - dot) < 1e-14);
  CHECK(std::abs(overlap(p, z1, z2)) < 1.0);
}

TEST_CASE("eigenvector residual") {
  const DeformParams p(0.5, 1.0, 0.0);
  double prev = INFINITY;
  for (std::size_t d : {16, 32, 64}) {
    const double r = eigen_residual(p, 0.4, FockTruncation(d));
    CHECK(r <= 1e-10);
    CHECK(r <= prev);
    prev = r;
  }
}

TEST_CASE("functional equation and product form for q > 1") {
  for (const auto& p : qdeform::testing::random_params(8, 41, true)) {
    const double q = p.q();
    const double r = domain_radius(p).radius;
    for (double frac : {1e-5, 0.01, 0.3, 0.9, 0.999}) {
      const double x = frac * r;
      const double lhs = normalization(p, x).value * (1.0 - (q - 1.0) * x / p.scale());
      CHECK(rel_err(lhs, normalization(p, x / q).value) <= 1e-11);
      const double prod = q_pochhammer_inf_inverse((q - 1.0) * x / p.scale(), q).value;
      CHECK(rel_err(normalization(p, x).value, 1.0 / prod) <= 1e-10);
    }
  }
}

TEST_CASE("q-derivative fixed point") {
  for (bool above : {false, true}) {
    for (const auto& p : qdeform::testing::random_params(6, above ? 51 : 52, above)) {
      const auto n = [&](double x) { return normalization(p, x).value; };
      const double hi = above ? 0.9 * domain_radius(p).radius : 10.0 * p.scale();
      for (double x : {0.01 * hi, 0.3 * hi, hi}) CHECK(rel_err(q_derivative(n, p, x), n(x)) <= 1e-10);
    }
  }
}

TEST_CASE("unity weight against the defining ratios") {
  const DeformParams up(2.0, 1.0, 0.0);
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(rel_err(unity_weight(up, x), 1.0 / (2.0 * std::numbers::pi * (1.0 - x))) < 1e-14);
  }
  const DeformParams down(0.5, 1.0, 0.0);
  const double c = 0.5 / std::log(2.0);
  for (double x : {0.1, 2.0, 30.0}) {
    const double want = c * normalization(down, x).value / normalization(down, x / 0.5).value;
    CHECK(rel_err(unity_weight(down, x), want) < 1e-12);
    // Equivalently c / (1 + x / 2) by the functional equation.
    CHECK(rel_err(unity_weight(down, x) * (1.0 + 0.5 * x), c) < 1e-12);
  }
}

TEST_CASE("moment targets") {
  const DeformParams p(2.0, 1.5, 1.0);
  CHECK(moment_target(p, 0) == doctest::Approx(1.0).epsilon(1e-15));
  for (long n = 1; n <= 10; ++n) {
    const double want = std::pow(p.scale(), n) * std::pow(2.0, -n * (n + 1) / 2.0) * q_factorial(n, 2.0);
    CHECK(rel_err(moment_target(p, n), want) < 1e-13);
  }
}

TEST_CASE("moment problem: q > 1 lattice and q < 1 quadrature") {
  for (double q : {1.5, 2.0, 5.0}) {
    const auto rep = verify_moments(DeformParams(q, 1.0, 0.0), 10);
    CHECK(rep.regime == MomentRegime::kHausdorff);
    CHECK(rep.max_rel_error() <= 1e-8);
  }
  for (double q : {0.3, 0.5, 0.8}) {
    const auto rep = verify_moments(DeformParams(q, 1.2, 0.5), 8);
    CHECK(rep.regime == MomentRegime::kStieltjes);
    CHECK(rep.max_rel_error() <= 1e-5);
    for (std::size_t i = 0; i < rep.orders.size(); ++i) {
      CHECK(rep.error_estimate[i] <= 1e-8 * rep.target[i]);
    }
  }
}

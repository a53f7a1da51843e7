#include <doctest.h>

#include <cmath>
#include <complex>

#include "qdeform/coherent.hpp"
#include "qdeform/statistics.hpp"
#include "support.hpp"

using namespace qdeform;
using qdeform::testing::rel_err;

namespace {

// <N^k> from the distribution, term by term.
double pdf_moment(const DeformParams& p, double x, int k) {
  double acc = 0.0;
  for (long n = 0; n < 400; ++n) acc += std::pow(static_cast<double>(n), k) * photon_pdf(p, x, n);
  return acc;
}

}  // namespace

TEST_CASE("photon distribution") {
  for (bool above : {false, true}) {
    for (const auto& p : qdeform::testing::random_params(6, above ? 61 : 62, above)) {
      const double x = above ? 0.6 * domain_radius(p).radius : 3.0 * p.scale();
      CHECK(std::abs(pdf_moment(p, x, 0) - 1.0) <= 1e-12);
      // P(n+1)/P(n) = x / phi(n+1)
      for (long n = 0; n < 10; ++n) {
        CHECK(rel_err(photon_pdf(p, x, n + 1) / photon_pdf(p, x, n), x / structure_function(p, n + 1)) < 1e-12);
      }
    }
  }
  CHECK(photon_pdf(DeformParams(2.0, 1.0, 0.0), 0.0, 0) == 1.0);
  CHECK(photon_pdf(DeformParams(2.0, 1.0, 0.0), 0.0, 3) == 0.0);
  CHECK_THROWS_AS(photon_pdf(DeformParams(2.0, 1.0, 0.0), 0.5, -1), DomainError);
}

TEST_CASE("stats point against the distribution") {
  for (bool above : {false, true}) {
    for (const auto& p : qdeform::testing::random_params(6, above ? 71 : 72, above)) {
      for (double frac : {0.01, 0.2, 0.8}) {
        const double x = above ? frac * domain_radius(p).radius : 5.0 * frac * p.scale();
        const auto s = stats_point(p, x);
        const double m1 = pdf_moment(p, x, 1);
        const double m2 = pdf_moment(p, x, 2);
        CHECK(rel_err(s.mean_n, m1) < 1e-12);
        CHECK(rel_err(s.second_moment, m2) < 1e-12);
        const double mandel = (m2 - m1 * m1 - m1) / m1;
        CHECK(std::abs(s.mandel_q - mandel) < 1e-9 * std::max(1.0, std::abs(mandel)));
      }
    }
  }
  const auto zero = stats_point(DeformParams(0.5, 1.0, 0.0), 0.0);
  CHECK(zero.mean_n == 0.0);
  CHECK(zero.mandel_q == 0.0);
}

TEST_CASE("monomial expectations") {
  const DeformParams p(0.5, 1.0, 0.0);
  const std::complex<double> z = std::polar(0.8, 0.7);
  const double x = std::norm(z);
  const auto n = normalization(p, x);
  CHECK(std::abs(monomial_expectation(p, z, 0, 0) - 1.0) < 1e-14);
  CHECK(rel_err(monomial_expectation(p, z, 1, 1).real(), x * n.d1 / n.value) < 1e-13);
  CHECK(rel_err(monomial_expectation(p, z, 2, 2).real(), x * x * n.d2 / n.value) < 1e-13);
  // Phase of <(b^dag)^s b^r> is (r - s) arg z.
  const auto off = monomial_expectation(p, z, 0, 2);
  CHECK(std::abs(std::arg(off) - 1.4) < 1e-13);
  CHECK_THROWS_AS(monomial_expectation(p, z, -1, 0), DomainError);
}

TEST_CASE("Mandel parameter near the origin") {
  CHECK(mandel_slope_prediction(DeformParams(0.5, 1.0, 0.0)) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
  CHECK(mandel_slope_prediction(DeformParams(2.0, 1.0, 0.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  for (bool above : {false, true}) {
    for (const auto& p : qdeform::testing::random_params(8, above ? 81 : 82, above)) {
      const auto est = mandel_slope(p, 1e-4 * std::min(1.0, domain_radius(p).radius));
      CHECK(est.rel_error <= 1e-3);
      CHECK(est.richardson_rel_error <= est.rel_error);
      // Sub-Poissonian only below q = 1.
      CHECK((est.q_over_x < 0.0) == !above);
    }
  }
}

TEST_CASE("conventional bosons from the deformed ladder") {
  const DeformParams p(0.7, 1.4, 0.3);
  const std::size_t d = 12;
  const auto bp = boson_operators(p, FockTruncation(d));
  // b b^dag - b^dag b = 1 on rows away from the edge.
  for (std::size_t k = 0; k + 1 < d; ++k) {
    const double bbd = bp.b.sup[k] * bp.b_dag.sub[k];
    const double bdb = k == 0 ? 0.0 : bp.b_dag.sub[k - 1] * bp.b.sup[k - 1];
    CHECK(std::abs(bbd - bdb - 1.0) < 1e-13);
  }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "qdeform/extended.hpp"
#include "qdeform/qcore.hpp"
#include "support.hpp"

using namespace qdeform;
using qdeform::testing::rel_err;

namespace {

double q_number_by_sum(long n, double q) {
  double acc = 0.0;
  for (long k = 0; k < n; ++k) acc += std::pow(q, static_cast<double>(k));
  return acc;
}

}  // namespace

TEST_CASE("q-number agrees with the geometric sum") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> q_dist(0.05, 4.0);
  std::uniform_int_distribution<long> n_dist(0, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const double q = q_dist(rng);
    if (std::abs(q - 1.0) < 1e-3) continue;
    const long n = n_dist(rng);
    const double want = q_number_by_sum(n, q);
    if (n == 0) {
      CHECK(q_number(n, q) == 0.0);
    } else {
      CHECK(rel_err(q_number(n, q), want) < 1e-13);
    }
  }
}

TEST_CASE("q-number near q = 1 stays accurate") {
  for (double eps : {1e-4, -1e-7, 1e-10}) {
    for (long n : {1L, 5L, 60L}) {
      CHECK(rel_err(q_number(n, 1.0 + eps), q_number_by_sum(n, 1.0 + eps)) < 1e-14);
    }
  }
}

TEST_CASE("excluded base is rejected") {
  CHECK_THROWS_AS(check_base(1.0), DomainError);
  CHECK_THROWS_AS(check_base(1.0 + 1e-13), DomainError);
  CHECK_THROWS_AS(check_base(0.0), DomainError);
  CHECK_THROWS_AS(check_base(-2.0), DomainError);
  CHECK_NOTHROW(check_base(1.0 + 1e-9));
  CHECK_THROWS_AS(DeformParams(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(DeformParams(2.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(DeformParams(2.0, 1.0, std::nan("")), DomainError);
}

TEST_CASE("q-factorial and its log") {
  for (double q : {0.3, 0.8, 1.5, 3.0}) {
    double prod = 1.0;
    for (long n = 1; n <= 25; ++n) {
      prod *= q_number_by_sum(n, q);
      CHECK(rel_err(q_factorial(n, q), prod) < 1e-12);
      CHECK(std::abs(log_q_factorial(n, q) - std::log(prod)) < 1e-12 * std::max(1.0, std::log(prod)));
    }
  }
  CHECK(q_factorial(0, 2.0) == 1.0);
  CHECK_THROWS_AS(q_factorial(400, 3.0), OverflowError);
  CHECK(std::isfinite(log_q_factorial(400, 3.0)));
}

TEST_CASE("finite q-Pochhammer by direct product") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> a_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> b_dist(-0.9, 0.9);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = a_dist(rng);
    const double b = b_dist(rng);
    double want = 1.0;
    for (long k = 0; k < 12; ++k) want *= 1.0 - a * std::pow(b, static_cast<double>(k));
    CHECK(std::abs(q_pochhammer(a, b, 12) - want) <= 1e-13 * std::max(1.0, std::abs(want)));
  }
  CHECK(q_pochhammer(3.0, 0.5, 0) == 1.0);
}

TEST_CASE("infinite q-Pochhammer matches the Euler expansion") {
  // (a; b)_inf = sum_n (-1)^n b^{n(n-1)/2} a^n / (b; b)_n, summed in extended
  // precision because the terms alternate and cancel.
  for (double b : {0.1, 0.5, 0.8}) {
    for (double a : {-0.7, 0.2, 0.6, 0.95}) {
      const ExtendedReal be(b), ae(a);
      ExtendedReal sum = 0, bb = 1;
      for (int n = 0; n < 600; ++n) {
        if (n > 0) bb *= 1 - pow(be, n);
        const ExtendedReal term = pow(be, n * (n - 1) / 2) * pow(ae, n) / bb;
        sum += n % 2 == 0 ? term : ExtendedReal(-term);
      }
      const auto got = q_pochhammer_inf(a, b);
      CHECK(rel_err(got.value, static_cast<double>(sum)) < 1e-13);
      CHECK(got.tail_bound < 1e-15);
    }
  }
  CHECK_THROWS_AS(q_pochhammer_inf(0.5, 1.0), DomainError);
}

TEST_CASE("inverse-base q-Pochhammer agrees with the plain product") {
  for (double q : {1.5, 2.0, 5.0}) {
    for (double a : {-3.0, 0.0, 0.3, 0.99, 1.7}) {
      const double want = q_pochhammer_inf(a, 1.0 / q).value;
      CHECK(std::abs(q_pochhammer_inf_inverse(a, q).value - want) <= 1e-13 * std::abs(want));
    }
  }
}

TEST_CASE("inverse-base q-Pochhammer near q = 1 against extended precision") {
  const double q = 1.0 + 1e-6;
  // log of the product is about -a / (q - 1); keep it inside the double range.
  for (double a : {1e-7, -1e-5, 1e-4}) {
    // Extended-precision log series, exact in q.
    ExtendedReal log_p = 0;
    const ExtendedReal qe(q);
    ExtendedReal power = 1;
    for (int j = 1; j < 2000; ++j) {
      power *= ExtendedReal(a);
      log_p -= power / (j * (1 - pow(qe, -j)));
    }
    CHECK(rel_err(q_pochhammer_inf_inverse(a, q).value, static_cast<double>(exp(log_p))) < 1e-12);
  }
}

TEST_CASE("structure function recurrence over random parameters") {
  // For q > 1 the difference cancels to q^-n of phi, so both regimes are
  // checked in extended precision; q < 1 is also fine in double.
  for (bool above : {false, true}) {
    for (const auto& p : qdeform::testing::random_params(40, above ? 3 : 4, above)) {
      const ExtendedReal s = scale_of<ExtendedReal>(p);
      const ExtendedReal q(p.q());
      for (long n = 0; n <= 60; ++n) {
        const ExtendedReal diff = structure_function_t<ExtendedReal>(p, n + 1) - structure_function_t<ExtendedReal>(p, n);
        const ExtendedReal want = s * pow(q, -n - 1);
        CHECK(static_cast<double>(abs(diff - want) / want) < 1e-40);
        CHECK(diff > 0);  // phi is increasing on the integers
        if (!above && n <= 40) {
          const double d = structure_function(p, n + 1) - structure_function(p, n);
          CHECK(rel_err(d, static_cast<double>(want)) < 1e-9);
        }
      }
    }
  }
  CHECK(structure_function(DeformParams(2.0, 1.0, 0.0), 0) == 0.0);
}

TEST_CASE("q-derivative of monomials") {
  const DeformParams p(2.0, 1.5, 0.5);
  const double s = p.scale();
  for (int k = 1; k <= 6; ++k) {
    const auto f = [k](double x) { return std::pow(x, k); };
    for (double x : {0.1, 0.7, 3.0}) {
      // D x^k = s (1 - q^-k) / (q - 1) x^{k-1} = phi(k) x^{k-1}
      const double want = s * (1.0 - std::pow(p.q(), -k)) / (p.q() - 1.0) * std::pow(x, k - 1);
      CHECK(rel_err(q_derivative(f, p, x), want) < 1e-13);
    }
  }
  CHECK_THROWS_AS(q_derivative([](double x) { return x; }, p, 0.0), DomainError);
}

TEST_CASE("lattice integral of monomials") {
  for (double q : {1.3, 2.0, 4.0}) {
    const DeformParams p(q, 1.2, 0.3);
    for (int n = 0; n <= 6; ++n) {
      const double a = 0.8;
      QIntegralOptions opts;
      opts.sup_on_interval = [n](double xm) { return std::pow(xm, n); };
      const auto got = q_integral([n](double x) { return std::pow(x, n); }, p, a, opts);
      const double want = (q - 1.0) * std::pow(a, n + 1) / (p.scale() * (1.0 - std::pow(q, -(n + 1.0))));
      CHECK(rel_err(got.value, want) < 1e-13);
      CHECK(got.tail_bound <= 1e-13 * want);
    }
  }
  CHECK_THROWS_AS(q_integral([](double) { return 1.0; }, DeformParams(0.5, 1.0, 0.0), 1.0), DomainError);
  CHECK_THROWS_AS(q_integral([](double) { return 1.0; }, DeformParams(2.0, 1.0, 0.0), -1.0), DomainError);
}

#include "qdeform/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qdeform/params.hpp"
#include "qdeform/qarith.hpp"

namespace qdeform {

namespace {

// Kronrod abscissae (descending, last is the centre); odd indices are the
// 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  if (!std::isfinite(value)) {
    throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return {a, b, value, error};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, std::size_t max_intervals) {
  if (!(b > a)) {
    if (a == b) return {};
    throw DomainError("integration bounds must satisfy a <= b");
  }
  std::vector<Segment> heap{gk15(f, a, b)};
  double total = heap.front().value;
  double error = heap.front().error;
  std::size_t evaluations = 15;

  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (heap.size() >= max_intervals) {
      throw ConvergenceError("adaptive quadrature exhausted " + std::to_string(max_intervals) +
                             " intervals with error " + std::to_string(error));
    }
    std::pop_heap(heap.begin(), heap.end());
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    heap.push_back(gk15(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(gk15(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end());
    evaluations += 30;
    // Re-sum from scratch so the running totals do not drift.
    CompensatedSum<double> v;
    CompensatedSum<double> e;
    for (const auto& seg : heap) {
      v += seg.value;
      e += seg.error;
    }
    total = v.value();
    error = e.value();
  }
  return {total, error, evaluations, heap.size()};
}

}  // namespace qdeform

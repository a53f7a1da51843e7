#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qdeform/params.hpp"

namespace qdeform::testing {

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Random parameter triples away from q = 1, fixed seed so failures reproduce.
inline std::vector<DeformParams> random_params(std::size_t count, unsigned seed, bool above_one) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> q_lo(0.15, 0.95);
  std::uniform_real_distribution<double> q_hi(1.05, 6.0);
  std::uniform_real_distribution<double> l_dist(0.5, 2.0);
  std::uniform_real_distribution<double> lam_dist(-1.0, 1.0);
  std::vector<DeformParams> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double q = above_one ? q_hi(rng) : q_lo(rng);
    out.emplace_back(q, l_dist(rng), lam_dist(rng));
  }
  return out;
}

inline std::vector<DeformParams> grid_params() {
  std::vector<DeformParams> out;
  for (double q : {0.25, 0.5, 0.9, 1.1, 2.0, 5.0}) {
    out.emplace_back(q, 1.0, 0.0);
    out.emplace_back(q, 2.0, 1.0);
  }
  return out;
}

}  // namespace qdeform::testing

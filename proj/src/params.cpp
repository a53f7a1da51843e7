#include "qdeform/params.hpp"

#include <cmath>
#include <cstdio>

namespace qdeform {

DeformParams::DeformParams(double q, double l, double lambda) : q_(q), l_(l), lambda_(lambda) {
  if (!std::isfinite(q) || !std::isfinite(l) || !std::isfinite(lambda)) {
    throw DomainError("deformation parameters must be finite");
  }
  if (!(q > 0.0)) {
    throw DomainError("q must be positive");
  }
  if (std::abs(q - 1.0) <= kQExclusionBand) {
    throw DomainError("q lies in the exclusion band |q - 1| <= 1e-12; use a nearby q for the q -> 1 limit");
  }
  if (l == 0.0) {
    throw DomainError("l must be nonzero");
  }
  scale_ = l * l * std::pow(q, lambda);
  if (!std::isfinite(scale_) || !(scale_ > 0.0)) {
    throw DomainError("scale l^2 q^lambda must be positive and finite");
  }
}

std::string DeformParams::describe() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "q=%.17g l=%.17g lambda=%.17g", q_, l_, lambda_);
  return buf;
}

}  // namespace qdeform

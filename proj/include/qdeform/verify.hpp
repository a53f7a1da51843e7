#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qdeform/params.hpp"

namespace qdeform {

enum class CheckStatus { kPassed, kFailed, kSkipped };

struct VerifyOutcome {
  std::string check_name;
  double max_rel_error = 0.0;
  double threshold = 0.0;
  CheckStatus status = CheckStatus::kSkipped;
  std::string note;

  [[nodiscard]] bool passed() const noexcept { return status == CheckStatus::kPassed; }
};

struct VerifyConfig {
  /// Truncation used by the operator checks.
  std::size_t dim = 64;
  /// Overrides of default_tolerances(), by check name.
  std::map<std::string, double> tolerances;
};

/// Threshold for every check the suite knows about.
const std::map<std::string, double>& default_tolerances();

/// Runs the identity suite for one parameter triple. Checks that do not apply
/// to the q regime are reported as skipped. Throws DomainError on an unknown
/// or non-positive tolerance override.
std::vector<VerifyOutcome> run_verify(const DeformParams& p, const VerifyConfig& cfg = {});

/// True when no check failed (skipped checks do not count against).
bool all_passed(const std::vector<VerifyOutcome>& outcomes);

const char* to_string(CheckStatus s);

}  // namespace qdeform

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace qdeform {

/// 200 significant decimal digits. Ladder identities on a D = 256 truncation
/// with q = 0.25 involve entries near 1e153, so resolving residuals at 1e-12
/// of the scale needs roughly 170 digits.
using ExtendedReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>,
                                                   boost::multiprecision::et_off>;

}  // namespace qdeform

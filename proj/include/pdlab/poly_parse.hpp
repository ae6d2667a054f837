#pragma once

#include <string_view>

#include "pdlab/powersum.hpp"

namespace pdlab {

/// Parses sums of products such as "3*phi2*phi3 - phi4 + 1". Coefficients
/// are decimal reals, subscripts are integers >= 2, whitespace is ignored.
/// Throws ParseError naming the offending token.
PowerSumPoly parse_poly(std::string_view text);

}  // namespace pdlab

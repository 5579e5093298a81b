#pragma once

#include <string>

namespace hypiso {

/// Shortest decimal string that round-trips to the same double.
/// Infinities print as "inf"/"-inf", NaN as "nan".
std::string format_double(double x);

}  // namespace hypiso

#pragma once

#include <string>

namespace fpedss {

/// 17 significant digits, "%.17g".
std::string format_double(double v);
/// Shortest round-trip representation.
std::string format_short(double v);

} // namespace fpedss

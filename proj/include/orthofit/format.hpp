#pragma once

#include <string>

namespace orthofit {

/// Shortest representation that parses back to the same double.
std::string format_number(double v);

/// 17 significant digits.
std::string format_exact(double v);

}  // namespace orthofit

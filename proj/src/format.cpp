#include "orthofit/format.hpp"

#include <charconv>

#include <fmt/format.h>

namespace orthofit {

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_exact(double v) { return fmt::format("{:.17g}", v); }

}  // namespace orthofit

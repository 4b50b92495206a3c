#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace hyperlim::detail {

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "?";
  return std::string(buf, ptr);
}

}  // namespace hyperlim::detail

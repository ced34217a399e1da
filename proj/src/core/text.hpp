#pragma once

#include <charconv>
#include <string>

namespace rotor {

/// Shortest decimal text that parses back to exactly v.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace rotor

#pragma once

#include <charconv>
#include <string>

namespace delaysl {

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace delaysl

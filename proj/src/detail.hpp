#pragma once

#include <charconv>
#include <string>

namespace lrdkit::detail {

/// Shortest round-trip decimal form, locale-independent.
inline void format_shortest(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

inline std::string format_shortest(double value) {
  std::string out;
  format_shortest(out, value);
  return out;
}

}  // namespace lrdkit::detail

#pragma once

// Locale-independent number formatting.

#include <charconv>
#include <string>
#include <system_error>

namespace zinv {

/// Shortest text that parses back to exactly `v`.
inline std::string format_exact(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// `%g`-style text with `digits` significant digits.
inline std::string format_general(double v, int digits = 6) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

/// "n", "n-3" or "n+2".
inline std::string shifted_index(const std::string& var, long offset) {
  if (offset == 0) return var;
  return var + (offset > 0 ? "+" : "-") + std::to_string(offset > 0 ? offset : -offset);
}

}  // namespace zinv

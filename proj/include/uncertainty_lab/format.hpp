#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace uncertainty_lab {

/// Locale-independent decimal with 17 significant digits, enough to
/// round-trip any double.
inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

/// Compact form for messages: 4 significant digits.
inline std::string format_short(double x) {
  if (!std::isfinite(x)) return format_real(x);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 4);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

}  // namespace uncertainty_lab

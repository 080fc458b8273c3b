#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace graphsig {

/// Fixed 17 significant digits, locale independent. Round-trips exactly.
inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

}  // namespace graphsig

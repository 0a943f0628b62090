#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace cdpam {

/// Shortest round-trip decimal form of x (locale-free, byte-stable).
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline std::string format_int(std::int64_t x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// Minimal CSV quoting: only fields containing a comma, quote or newline
/// get wrapped.
inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace cdpam

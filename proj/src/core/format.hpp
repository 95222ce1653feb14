#pragma once

#include <charconv>
#include <complex>
#include <string>

namespace specband {

// Locale-independent short number rendering for check witnesses and text output.
inline std::string fmt_num(double v, int precision = 6) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

inline std::string fmt_num(std::complex<double> z, int precision = 6) {
  if (z.imag() == 0.0) return fmt_num(z.real(), precision);
  std::string out = fmt_num(z.real(), precision);
  out += z.imag() < 0.0 ? "-" : "+";
  out += fmt_num(std::abs(z.imag()), precision);
  out += "i";
  return out;
}

}  // namespace specband

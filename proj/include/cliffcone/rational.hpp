#pragma once

// Exact rational scalar type and helpers shared by the exact-arithmetic paths.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

#include "cliffcone/errors.hpp"

namespace cliffcone {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p", "p/q", or a plain decimal such as "1.5" (converted exactly).
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Int p(s.substr(0, slash));
      Int q(s.substr(slash + 1));
      if (q == 0) throw parse_error("zero denominator in '" + s + "'");
      return Rat(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    bool neg = !digits.empty() && digits[0] == '-';
    Int p(digits);
    Int q = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) q *= 10;
    (void)neg;
    return Rat(p, q);
  } catch (const std::exception&) {
    throw parse_error("bad rational literal '" + s + "'");
  }
}

// Exact square root when the argument is the square of a rational.
inline std::optional<Rat> exact_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return Rat(0);
  Int p = numerator(r), q = denominator(r);
  Int sp = boost::multiprecision::sqrt(p);
  Int sq = boost::multiprecision::sqrt(q);
  if (sp * sp != p || sq * sq != q) return std::nullopt;
  return Rat(sp, sq);
}

}  // namespace cliffcone

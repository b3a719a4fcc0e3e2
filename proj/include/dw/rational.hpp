#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace dw {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Inverse of to_string; accepts "p", "-p", "p/q".
inline Rational rational_from_string(const std::string& s) { return Rational(s); }

inline Integer ipow(const Integer& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

}  // namespace dw

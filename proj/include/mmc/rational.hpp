#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmc {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always reduced, denominator > 0, zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_num(const Rational& q) { return numerator(q); }
inline BigInt rational_den(const Rational& q) { return denominator(q); }

/// Canonical "num/den" spelling used by every JSON surface.
inline std::string rational_str(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Accepts "a/b" or "a".
inline Rational rational_parse(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    return Rational(std::string(s));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + std::string(s));
  }
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

}  // namespace mmc

#pragma once

#include <boost/rational.hpp>
#include <string>

namespace ts {

using Rational = boost::rational<long long>;

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

inline long long floor(const Rational& x) { return floor_div(x.numerator(), x.denominator()); }
inline long long ceil(const Rational& x) { return ceil_div(x.numerator(), x.denominator()); }

inline std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

// boost::rational<long long> == int recurses forever in this boost version.
inline bool operator==(const Rational& a, int b) { return a == Rational(b); }
inline bool operator!=(const Rational& a, int b) { return !(a == Rational(b)); }

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace ts

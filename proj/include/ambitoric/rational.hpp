#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ambitoric {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);
long double to_long_double(const Rational& r);

// Accepts "3", "-2/5", "0.125", "1e-3". Decimal input is converted exactly.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

// Best rational approximation with bounded denominator (continued fractions).
Rational approximate(double v, const BigInt& max_den);

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

inline int sign(const Rational& r) {
  return r.sign();
}

}  // namespace ambitoric

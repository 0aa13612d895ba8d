#include "ambitoric/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace ambitoric {

namespace bmp = boost::multiprecision;

double to_double(const Rational& r) {
  return static_cast<double>(to_long_double(r));
}

long double to_long_double(const Rational& r) {
  // convert_to<long double> on huge numerators overflows; scale first.
  BigInt n = bmp::numerator(r), d = bmp::denominator(r);
  if (n == 0) return 0.0L;
  long shift = static_cast<long>(bmp::msb(bmp::abs(n))) - static_cast<long>(bmp::msb(d));
  if (std::abs(shift) < 900 && bmp::msb(bmp::abs(n)) < 1000 && bmp::msb(d) < 1000)
    return n.convert_to<long double>() / d.convert_to<long double>();
  // keep 80 bits of quotient
  long s = 80 - shift;
  BigInt q = s >= 0 ? BigInt((n << s) / d) : BigInt(n / (d << (-s)));
  return std::ldexp(q.convert_to<long double>(), static_cast<int>(-s));
}

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational nr = parse_rational(s.substr(0, slash)), dr = parse_rational(s.substr(slash + 1));
    if (!is_integer(nr) || !is_integer(dr))
      throw std::invalid_argument("fraction needs integer parts: '" + raw + "'");
    BigInt n = bmp::numerator(nr), d = bmp::numerator(dr);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
    return Rational(n, d);
  }
  // decimal / exponent form, converted exactly
  std::string mant = s;
  long exp10 = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    mant = s.substr(0, e);
    exp10 = std::stol(s.substr(e + 1));
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a number: '" + raw + "'");
  // a leading 0 would make the cpp_int string constructor read octal
  auto nz = digits.find_first_not_of('0');
  BigInt n(nz == std::string::npos ? std::string("0") : digits.substr(nz));
  BigInt p = bmp::pow(BigInt(10), static_cast<unsigned>(std::abs(exp10)));
  Rational r = exp10 >= 0 ? Rational(n * p) : Rational(n, p);
  return neg ? -r : r;
}

std::string to_string(const Rational& r) {
  if (is_integer(r)) return bmp::numerator(r).str();
  return bmp::numerator(r).str() + "/" + bmp::denominator(r).str();
}

Rational approximate(double v, const BigInt& max_den) {
  if (!std::isfinite(v)) throw std::domain_error("approximate: non-finite value");
  // continued fraction convergents
  BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int i = 0; i < 64; ++i) {
    double a = std::floor(x);
    BigInt ai(static_cast<long long>(a));
    BigInt h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double frac = x - a;
    if (std::abs(frac) < 1e-15) break;
    x = 1.0 / frac;
  }
  if (k1 == 0) return Rational(static_cast<long long>(std::llround(v)));
  return Rational(h1, k1);
}

}  // namespace ambitoric

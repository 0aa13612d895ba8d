#pragma once

#include "ambitoric/rational.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace ambitoric {

// Dense univariate polynomial over Q, coefficients in ascending order.
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
  static Poly monomial(const Rational& c, int k);
  static Poly from_ints(std::initializer_list<long long> ascending);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
  long double eval_ld(long double x) const;
  // value and first derivative in one Horner pass
  std::pair<double, double> eval_d1(double x) const;

  Poly derivative() const;
  Poly monic() const;
  Poly operator-() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str(char var = 'z') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly pow(const Poly& p, int n);
Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0,0)=0
// s*a + t*b = gcd(a,b)
void ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t);
Poly squarefree_part(const Poly& p);

// Largest k with f^k | p (f nonconstant). Returns -1 for p == 0.
int multiplicity(const Poly& p, const Poly& f);
int multiplicity_at(const Poly& p, const Rational& x);

// Primitive integer multiple with positive leading coefficient.
std::vector<BigInt> primitive_integer(const Poly& p);
Poly primitive(const Poly& p);

// sum_k p_k (d z - b)^k (a - c z)^(n-k); the binary-form action of weight n
// (no determinant factor). Requires deg p <= n.
Poly homogeneous_transform(const Poly& p, int n, const Rational& a, const Rational& b,
                           const Rational& c, const Rational& d);

// Real root isolation. Each interval (lo, hi] contains exactly one root of a
// squarefree polynomial; lo == hi means the root is exactly lo.
struct RootInterval {
  Rational lo, hi;
};

class Sturm {
 public:
  explicit Sturm(const Poly& p);
  int variations_at(const Rational& x) const;
  int variations_at_inf(int sgn) const;
  // number of distinct real roots in (lo, hi]
  int count(const Rational& lo, const Rational& hi) const;
  int count_all() const;

 private:
  std::vector<Poly> seq_;
};

Rational cauchy_bound(const Poly& p);
std::vector<RootInterval> isolate_real_roots(const Poly& p);
// Shrinks iv until hi - lo <= width. p must be squarefree with one root in iv.
RootInterval refine(const Poly& p, RootInterval iv, const Rational& width);
std::vector<Rational> rational_roots(const Poly& p);
std::vector<std::complex<double>> complex_roots(const Poly& p);

}  // namespace ambitoric

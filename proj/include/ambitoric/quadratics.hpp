#pragma once

#include "ambitoric/algebraic.hpp"
#include "ambitoric/poly.hpp"

#include <array>
#include <string>

namespace ambitoric {

// p(z) = c0 z^2 + 2 c1 z + c2
struct Quadratic {
  Rational c0, c1, c2;

  Quadratic() = default;
  Quadratic(Rational a, Rational b, Rational c) : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)) {}
  static Quadratic from_poly(const Poly& p);  // deg <= 2
  Poly poly() const;

  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
  Rational operator()(const Rational& z) const { return c0 * z * z + 2 * c1 * z + c2; }
  double operator()(double z) const;
  // polarization c0 x y + c1 (x + y) + c2
  Rational polar(const Rational& x, const Rational& y) const { return c0 * x * y + c1 * (x + y) + c2; }
  double polar(double x, double y) const;
  // d/dx of the polarization (it is affine in each slot)
  double polar_dx(double y) const { return c0d() * y + c1d(); }
  double c0d() const { return to_double(c0); }
  double c1d() const { return to_double(c1); }
  double c2d() const { return to_double(c2); }
  // leading behaviour of p(x,y) as x -> inf: p(x,y) ~ x (c0 y + c1)
  double polar_at_inf(double y) const { return c0d() * y + c1d(); }

  friend Quadratic operator+(const Quadratic& a, const Quadratic& b);
  friend Quadratic operator-(const Quadratic& a, const Quadratic& b);
  friend Quadratic operator*(const Rational& s, const Quadratic& a);
  friend bool operator==(const Quadratic& a, const Quadratic& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
  }
  friend bool operator!=(const Quadratic& a, const Quadratic& b) { return !(a == b); }

  std::string str() const { return poly().str(); }
};

// 2 q1 p1 - q2 p0 - q0 p2
Rational inner(const Quadratic& q, const Quadratic& p);

enum class ConicType { Parabolic, Hyperbolic, Elliptic };
std::string to_string(ConicType t);
ConicType conic_type(const Quadratic& q);

// p is a multiple of r (including zero multiple); returns the factor if so
std::optional<Rational> proportional(const Quadratic& p, const Quadratic& r);

// (p, R)^(2) = p R'' - 3 p' R' + 6 p'' R; R of degree <= 4
Quadratic transvectant2(const Quadratic& p, const Poly& R);
// (1/2)(p q' - p' q), the bracket used to identify q-perp with t
Quadratic bracket(const Quadratic& p, const Quadratic& q);

// x -> (a x + b)/(c x + d), stored as a primitive integer matrix with the
// first nonzero entry positive
class Mobius {
 public:
  Mobius(const Rational& a, const Rational& b, const Rational& c, const Rational& d);
  static Mobius identity() { return Mobius(1, 0, 0, 1); }
  static Mobius inversion() { return Mobius(0, -1, 1, 0); }  // z -> -1/z

  const Rational& a() const { return m_[0]; }
  const Rational& b() const { return m_[1]; }
  const Rational& c() const { return m_[2]; }
  const Rational& d() const { return m_[3]; }
  Rational det() const { return a() * d() - b() * c(); }
  Mobius inverse() const { return Mobius(d(), -b(), -c(), a()); }
  Mobius compose(const Mobius& inner) const;  // this o inner

  Endpoint apply(const Endpoint& e) const { return mobius_image(e, a(), b(), c(), d()); }
  double apply(double x) const;
  double derivative(double x) const;  // det / (c x + d)^2
  // pole in the source coordinate (infinity if c == 0)
  Endpoint pole() const;

  friend bool operator==(const Mobius& x, const Mobius& y) { return x.m_ == y.m_; }
  std::string str() const;

 private:
  std::array<Rational, 4> m_;
};

// Binary-form transport: quadratics carry weight 2 with factor 1/det,
// quartics weight 4 with factor 1/det^2, so that p~(x~) = p(x) dx~/dx and
// A~(x~) = A(x) (dx~/dx)^2.
Quadratic transport_quadratic(const Quadratic& p, const Mobius& m);
Poly transport_quartic(const Poly& A, const Mobius& m);

}  // namespace ambitoric

#include "ambitoric/quadratics.hpp"

#include <sstream>
#include <stdexcept>

namespace ambitoric {

namespace bmp = boost::multiprecision;

Quadratic Quadratic::from_poly(const Poly& p) {
  if (p.degree() > 2) throw std::invalid_argument("not a quadratic: " + p.str());
  return Quadratic(p.coeff(2), p.coeff(1) / 2, p.coeff(0));
}

Poly Quadratic::poly() const { return Poly(std::vector<Rational>{c2, 2 * c1, c0}); }

double Quadratic::operator()(double z) const { return (c0d() * z + 2 * c1d()) * z + c2d(); }

double Quadratic::polar(double x, double y) const { return c0d() * x * y + c1d() * (x + y) + c2d(); }

Quadratic operator+(const Quadratic& a, const Quadratic& b) {
  return Quadratic(a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2);
}
Quadratic operator-(const Quadratic& a, const Quadratic& b) {
  return Quadratic(a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2);
}
Quadratic operator*(const Rational& s, const Quadratic& a) { return Quadratic(s * a.c0, s * a.c1, s * a.c2); }

Rational inner(const Quadratic& q, const Quadratic& p) { return 2 * q.c1 * p.c1 - q.c2 * p.c0 - q.c0 * p.c2; }

std::string to_string(ConicType t) {
  switch (t) {
    case ConicType::Parabolic: return "parabolic";
    case ConicType::Hyperbolic: return "hyperbolic";
    case ConicType::Elliptic: return "elliptic";
  }
  return "?";
}

ConicType conic_type(const Quadratic& q) {
  if (q.is_zero()) throw std::invalid_argument("conic_type: zero polynomial");
  if (q.c0 == 0) {
    // root at infinity; a second, distinct one iff the linear term survives
    return q.c1 != 0 ? ConicType::Hyperbolic : ConicType::Parabolic;
  }
  Rational d = q.c1 * q.c1 - q.c0 * q.c2;
  if (d > 0) return ConicType::Hyperbolic;
  if (d == 0) return ConicType::Parabolic;
  return ConicType::Elliptic;
}

std::optional<Rational> proportional(const Quadratic& p, const Quadratic& r) {
  if (r.is_zero()) return p.is_zero() ? std::optional<Rational>(0) : std::nullopt;
  Rational s;
  if (r.c0 != 0) s = p.c0 / r.c0;
  else if (r.c1 != 0) s = p.c1 / r.c1;
  else s = p.c2 / r.c2;
  if (s * r == p) return s;
  return std::nullopt;
}

Quadratic transvectant2(const Quadratic& p, const Poly& R) {
  if (R.degree() > 4) throw std::invalid_argument("transvectant2: R must have degree <= 4");
  Poly P = p.poly();
  Poly t = P * R.derivative().derivative() - Rational(3) * (P.derivative() * R.derivative()) +
           Rational(6) * (P.derivative().derivative() * R);
  return Quadratic::from_poly(t);
}

Quadratic bracket(const Quadratic& p, const Quadratic& q) {
  Poly P = p.poly(), Q = q.poly();
  return Quadratic::from_poly(Rational(1, 2) * (P * Q.derivative() - P.derivative() * Q));
}

Mobius::Mobius(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  if (a * d - b * c == 0) throw std::invalid_argument("degenerate Mobius transformation");
  // scale to a primitive integer matrix, first nonzero entry positive
  std::array<Rational, 4> v{a, b, c, d};
  BigInt l = 1;
  for (auto& x : v) {
    BigInt den = bmp::denominator(x);
    l = l / bmp::gcd(l, den) * den;
  }
  BigInt g = 0;
  for (auto& x : v) {
    x *= l;
    g = bmp::gcd(g, bmp::abs(bmp::numerator(x)));
  }
  for (auto& x : v) x /= g;
  for (auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  m_ = v;
}

Mobius Mobius::compose(const Mobius& n) const {
  return Mobius(a() * n.a() + b() * n.c(), a() * n.b() + b() * n.d(), c() * n.a() + d() * n.c(),
                c() * n.b() + d() * n.d());
}

double Mobius::apply(double x) const {
  if (std::isinf(x)) return c() == 0 ? x : to_double(a() / c());
  return (to_double(a()) * x + to_double(b())) / (to_double(c()) * x + to_double(d()));
}

double Mobius::derivative(double x) const {
  double den = to_double(c()) * x + to_double(d());
  return to_double(det()) / (den * den);
}

Endpoint Mobius::pole() const {
  if (c() == 0) return Endpoint::inf();
  return Endpoint::finite(-d() / c());
}

std::string Mobius::str() const {
  std::ostringstream os;
  os << "[" << to_string(a()) << ", " << to_string(b()) << "; " << to_string(c()) << ", " << to_string(d())
     << "]";
  return os.str();
}

Quadratic transport_quadratic(const Quadratic& p, const Mobius& m) {
  Poly t = homogeneous_transform(p.poly(), 2, m.a(), m.b(), m.c(), m.d());
  return Quadratic::from_poly((1 / m.det()) * t);
}

Poly transport_quartic(const Poly& A, const Mobius& m) {
  if (A.degree() > 4) throw std::invalid_argument("gauge transport needs degree <= 4, got " + A.str());
  Poly t = homogeneous_transform(A, 4, m.a(), m.b(), m.c(), m.d());
  Rational dt = m.det();
  return (1 / (dt * dt)) * t;
}

}  // namespace ambitoric

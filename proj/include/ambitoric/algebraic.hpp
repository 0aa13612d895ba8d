#pragma once

#include "ambitoric/poly.hpp"

#include <memory>
#include <optional>
#include <string>

namespace ambitoric {

// Real algebraic number: a monic irreducible minimal polynomial plus an
// isolating interval. Rationals have a linear minimal polynomial and lo == hi.
class RealAlg {
 public:
  RealAlg() : RealAlg(Rational(0)) {}
  RealAlg(const Rational& r);
  // index-th real root (ascending, 0-based) of p
  static RealAlg root_of(const Poly& p, int index);
  // the unique root of p in iv (p need not be irreducible or squarefree)
  static RealAlg from_interval(const Poly& p, const RootInterval& iv);

  const Poly& minpoly() const { return m_; }
  const RootInterval& interval() const { return iv_; }
  bool is_rational() const { return m_.degree() == 1; }
  Rational rational_value() const;
  int degree() const { return m_.degree(); }
  double approx() const;
  // copy with interval width <= w
  RealAlg refined(const Rational& w) const;
  int sign() const;

  std::string str() const;

 private:
  Poly m_;
  RootInterval iv_;
};

int compare(const RealAlg& a, const RealAlg& b);
inline bool operator==(const RealAlg& a, const RealAlg& b) { return compare(a, b) == 0; }
inline bool operator<(const RealAlg& a, const RealAlg& b) { return compare(a, b) < 0; }

// Monic irreducible factor of p vanishing at the root isolated by iv.
Poly minimal_polynomial(const Poly& p, const RootInterval& iv);

// Element of Q(gamma) = Q[z]/(m), m = minpoly of gamma.
class NFElem {
 public:
  NFElem(std::shared_ptr<const RealAlg> field, const Rational& r);
  NFElem(std::shared_ptr<const RealAlg> field, const Poly& v);
  static NFElem generator(std::shared_ptr<const RealAlg> field);

  const Poly& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_rational() const { return v_.degree() <= 0; }
  Rational rational_value() const;
  double approx() const;
  std::string str() const;
  const std::shared_ptr<const RealAlg>& field() const { return f_; }

  friend NFElem operator+(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const Rational& s, const NFElem& a);
  NFElem operator-() const;
  NFElem inverse() const;

 private:
  std::shared_ptr<const RealAlg> f_;
  Poly v_;
};

// evaluate a rational polynomial at the field generator
NFElem eval_at_generator(const Poly& p, const std::shared_ptr<const RealAlg>& field);

// Point of RP1 = R u {inf}.
struct Endpoint {
  bool infinite = false;
  RealAlg value;

  static Endpoint inf() { return Endpoint{true, RealAlg()}; }
  static Endpoint finite(const RealAlg& v) { return Endpoint{false, v}; }
  static Endpoint finite(const Rational& v) { return Endpoint{false, RealAlg(v)}; }
  bool is_rational() const { return !infinite && value.is_rational(); }
  double approx() const;  // +inf for infinity
  double theta() const;   // 2 atan(x), pi at infinity
  std::string str() const;
};

bool operator==(const Endpoint& a, const Endpoint& b);
inline bool operator!=(const Endpoint& a, const Endpoint& b) { return !(a == b); }
// order on R u {inf} with inf largest
int compare(const Endpoint& a, const Endpoint& b);

// strict cyclic betweenness on RP1 going upward from a to b
bool strictly_between(const Endpoint& a, const Endpoint& p, const Endpoint& b);

// Upward arc (lo, hi) in RP1; lo == hi is rejected as empty.
struct Arc {
  Endpoint lo, hi;
  bool contains(const Endpoint& p) const { return strictly_between(lo, p, hi); }
  bool contains(double x) const;
  bool contains_infinity() const;
  // parameter s in (0,1) -> point, uniform in theta
  double at(double s) const;
  double theta_span() const;
};

bool arcs_intersect(const Arc& a, const Arc& b);

// Mobius image of a point, x -> (a x + b)/(c x + d)
Endpoint mobius_image(const Endpoint& e, const Rational& a, const Rational& b, const Rational& c,
                      const Rational& d);

}  // namespace ambitoric

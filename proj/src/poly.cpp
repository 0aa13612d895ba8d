#include "ambitoric/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ambitoric {

namespace bmp = boost::multiprecision;

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Rational& c, int k) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::from_ints(std::initializer_list<long long> ascending) {
  std::vector<Rational> v;
  for (long long a : ascending) v.emplace_back(a);
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

Rational Poly::operator()(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

double Poly::operator()(double x) const {
  return static_cast<double>(eval_ld(x));
}

long double Poly::eval_ld(long double x) const {
  long double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + to_long_double(*it);
  return r;
}

std::pair<double, double> Poly::eval_d1(double x) const {
  long double v = 0, d = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    d = d * x + v;
    v = v * x + to_long_double(*it);
  }
  return {static_cast<double>(v), static_cast<double>(d)};
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long long>(i);
  return Poly(std::move(v));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return (1 / leading()) * *this;
}

Poly Poly::operator-() const { return Rational(-1) * *this; }

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
  return Poly(std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Poly operator*(const Rational& s, const Poly& a) {
  std::vector<Rational> v(a.c_);
  for (auto& x : v) x *= s;
  return Poly(std::move(v));
}

std::string Poly::str(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& a = c_[i];
    if (a == 0) continue;
    Rational m = a < 0 ? Rational(-a) : a;
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    if (m != 1 || i == 0) os << to_string(m);
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> q(a.degree() - db + 1);
  Rational lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational t = r[i] / lb;
    q[i - db] = t;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly pow(const Poly& p, int n) {
  Poly r = Poly::constant(1);
  for (int i = 0; i < n; ++i) r = r * p;
  return r;
}

Poly gcd(const Poly& a0, const Poly& b0) {
  Poly a = a0, b = b0;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = b;
    b = primitive(r);  // keeps coefficient growth down
  }
  return a.monic();
}

void ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b, s0 = Poly::constant(1), s1, t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1; r1 = r;
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0.is_zero()) {
    g = r0; s = s0; t = t0;
    return;
  }
  Rational inv = 1 / r0.leading();
  g = inv * r0;
  s = inv * s0;
  t = inv * t0;
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p;
  return (p / gcd(p, p.derivative())).monic();
}

int multiplicity(const Poly& p, const Poly& f) {
  if (p.is_zero()) return -1;
  if (f.degree() < 1) throw std::invalid_argument("multiplicity: constant factor");
  int k = 0;
  Poly r = p;
  while (true) {
    auto [q, rem] = divmod(r, f);
    if (!rem.is_zero()) return k;
    r = q;
    ++k;
  }
}

int multiplicity_at(const Poly& p, const Rational& x) {
  return multiplicity(p, Poly(std::vector<Rational>{-x, 1}));
}

std::vector<BigInt> primitive_integer(const Poly& p) {
  std::vector<BigInt> out;
  if (p.is_zero()) return out;
  BigInt l = 1;
  for (const auto& c : p.coeffs()) {
    BigInt d = bmp::denominator(c);
    l = l / bmp::gcd(l, d) * d;
  }
  BigInt g = 0;
  for (const auto& c : p.coeffs()) {
    BigInt n = bmp::numerator(Rational(c * l));
    out.push_back(n);
    g = bmp::gcd(g, bmp::abs(n));
  }
  if (p.leading() < 0) g = -g;
  for (auto& n : out) n /= g;
  return out;
}

Poly primitive(const Poly& p) {
  std::vector<Rational> v;
  for (auto& n : primitive_integer(p)) v.emplace_back(n);
  return Poly(std::move(v));
}

Poly homogeneous_transform(const Poly& p, int n, const Rational& a, const Rational& b,
                           const Rational& c, const Rational& d) {
  if (p.degree() > n) throw std::invalid_argument("homogeneous_transform: degree exceeds weight");
  Poly u(std::vector<Rational>{-b, d});  // d z - b
  Poly v(std::vector<Rational>{a, -c});  // a - c z
  Poly out;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k) == 0) continue;
    out = out + p.coeff(k) * (pow(u, k) * pow(v, n - k));
  }
  return out;
}

namespace {

// positive rescaling to a primitive integer polynomial; keeps signs, which a
// Sturm sequence depends on
Poly content_free(const Poly& p) {
  Poly q = primitive(p);
  return p.leading() < 0 ? -q : q;
}

}  // namespace

Sturm::Sturm(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm sequence of zero polynomial");
  seq_.push_back(content_free(p));
  if (p.degree() < 1) return;
  seq_.push_back(content_free(p.derivative()));
  while (true) {
    Poly r = seq_[seq_.size() - 2] % seq_.back();
    if (r.is_zero()) break;
    seq_.push_back(content_free(-r));
  }
}

static int count_changes(const std::vector<int>& s) {
  int n = 0, last = 0;
  for (int v : s) {
    if (v == 0) continue;
    if (last != 0 && v != last) ++n;
    last = v;
  }
  return n;
}

int Sturm::variations_at(const Rational& x) const {
  std::vector<int> s;
  for (const auto& p : seq_) s.push_back(p(x).sign());
  return count_changes(s);
}

int Sturm::variations_at_inf(int sgn) const {
  std::vector<int> s;
  for (const auto& p : seq_) {
    int l = p.leading().sign();
    if (sgn < 0 && p.degree() % 2 == 1) l = -l;
    s.push_back(l);
  }
  return count_changes(s);
}

int Sturm::count(const Rational& lo, const Rational& hi) const {
  return variations_at(lo) - variations_at(hi);
}

int Sturm::count_all() const { return variations_at_inf(-1) - variations_at_inf(1); }

Rational cauchy_bound(const Poly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = p.coeff(i) / p.leading();
    if (r < 0) r = -r;
    m = std::max(m, r);
  }
  return m + 1;
}

std::vector<RootInterval> isolate_real_roots(const Poly& p0) {
  std::vector<RootInterval> out;
  if (p0.degree() < 1) return out;
  Poly p = squarefree_part(p0);
  Sturm st(p);
  Rational B = cauchy_bound(p);
  std::vector<RootInterval> stack{{-B, B}};
  while (!stack.empty()) {
    RootInterval iv = stack.back();
    stack.pop_back();
    int n = st.count(iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      if (p(iv.hi) == 0) iv.lo = iv.hi;
      out.push_back(iv);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    stack.push_back({mid, iv.hi});
    stack.push_back({iv.lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.hi < b.hi; });
  return out;
}

RootInterval refine(const Poly& p, RootInterval iv, const Rational& width) {
  if (iv.lo == iv.hi) return iv;
  if (p(iv.hi) == 0) return {iv.hi, iv.hi};
  // single simple root in (lo, hi], p(hi) != 0: sign change brackets it
  int shi = p(iv.hi).sign();
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = p(mid).sign();
    if (sm == 0) return {mid, mid};
    if (sm == shi) iv.hi = mid;
    else iv.lo = mid;
  }
  return iv;
}

std::vector<Rational> rational_roots(const Poly& p0) {
  std::vector<Rational> out;
  if (p0.degree() < 1) return out;
  Poly p = squarefree_part(p0);
  auto ints = primitive_integer(p);
  BigInt lead = bmp::abs(ints.back());
  // a rational root has denominator dividing lead; isolate finely enough that
  // only one candidate with that denominator fits
  Rational width(1, 4 * lead * lead);
  for (auto iv : isolate_real_roots(p)) {
    iv = refine(p, iv, width);
    if (iv.lo == iv.hi) {
      out.push_back(iv.lo);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    Rational scaled = mid * lead;
    BigInt n = bmp::numerator(scaled) / bmp::denominator(scaled);
    for (BigInt k = n - 1; k <= n + 1; ++k) {
      Rational cand(k, lead);
      if (cand > iv.lo && cand <= iv.hi && p(cand) == 0) {
        out.push_back(cand);
        break;
      }
    }
  }
  return out;
}

std::vector<std::complex<double>> complex_roots(const Poly& p) {
  int n = p.degree();
  std::vector<std::complex<double>> out;
  if (n < 1) return out;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  double lead = to_double(p.leading());
  for (int i = 0; i < n; ++i) C(0, i) = -to_double(p.coeff(n - 1 - i)) / lead;
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  for (int i = 0; i < n; ++i) {
    std::complex<long double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    // Newton polish in long double
    for (int it = 0; it < 8; ++it) {
      std::complex<long double> v = 0, d = 0;
      for (int k = n; k >= 0; --k) {
        d = d * z + v;
        v = v * z + std::complex<long double>(to_long_double(p.coeff(k)));
      }
      if (std::abs(d) == 0.0L) break;
      z -= v / d;
    }
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

}  // namespace ambitoric

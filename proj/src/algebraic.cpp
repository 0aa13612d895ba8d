#include "ambitoric/algebraic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ambitoric {

namespace bmp = boost::multiprecision;

namespace {

Poly linear(const Rational& r) { return Poly(std::vector<Rational>{-r, 1}); }

// Search products of root subsets for an integer factor containing root j.
std::optional<Poly> factor_through_roots(const Poly& p, int j_hint_z_index,
                                         const std::vector<std::complex<double>>& zroots) {
  int n = p.degree();
  auto ints = primitive_integer(p);
  BigInt an = ints.back();
  // monic integer transform: w = an z
  std::vector<Rational> hat(n + 1);
  BigInt scale = 1;
  for (int k = n; k >= 0; --k) {
    hat[k] = Rational(ints[k] * scale);
    scale *= an;
  }
  // hat_k = a_k an^(n-1-k) ; the loop above gives a_k an^(n-k), divide by an
  for (auto& h : hat) h /= Rational(an);
  Poly P(hat);
  double anf = to_double(Rational(an));
  std::vector<std::complex<double>> w;
  for (auto& z : zroots) w.push_back(z * anf);

  for (int k = 1; k < n; ++k) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != k || !(mask & (1u << j_hint_z_index))) continue;
      std::vector<std::complex<double>> c{1.0};
      for (int i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        std::vector<std::complex<double>> nc(c.size() + 1, 0.0);
        for (size_t t = 0; t < c.size(); ++t) {
          nc[t + 1] += c[t];
          nc[t] -= c[t] * w[i];
        }
        c = nc;
      }
      bool ok = true;
      std::vector<Rational> fc;
      for (auto& v : c) {
        double r = std::round(v.real());
        if (std::abs(v.imag()) > 1e-5 * std::max(1.0, std::abs(v.real())) ||
            std::abs(v.real() - r) > 1e-5 * std::max(1.0, std::abs(v.real())) || std::abs(r) > 1e15) {
          ok = false;
          break;
        }
        fc.emplace_back(static_cast<long long>(r));
      }
      if (!ok) continue;
      Poly fhat(fc);
      if (!(P % fhat).is_zero()) continue;
      // back to z: f(z) = fhat(an z)
      std::vector<Rational> fz(fhat.degree() + 1);
      Rational pw = 1;
      for (int i = 0; i <= fhat.degree(); ++i) {
        fz[i] = fhat.coeff(i) * pw;
        pw *= Rational(an);
      }
      return Poly(fz).monic();
    }
  }
  return std::nullopt;
}

}  // namespace

RealAlg::RealAlg(const Rational& r) : m_(linear(r)), iv_{r, r} {}

RealAlg RealAlg::root_of(const Poly& p, int index) {
  auto roots = isolate_real_roots(p);
  if (index < 0 || index >= static_cast<int>(roots.size()))
    throw std::invalid_argument("root index " + std::to_string(index) + " out of range: polynomial " +
                                p.str() + " has " + std::to_string(roots.size()) + " real roots");
  return from_interval(p, roots[index]);
}

RealAlg RealAlg::from_interval(const Poly& p0, const RootInterval& iv0) {
  Poly p = squarefree_part(p0);
  RealAlg out;
  if (iv0.lo == iv0.hi) {
    if (p(iv0.lo) != 0) throw std::invalid_argument("from_interval: point is not a root");
    return RealAlg(iv0.lo);
  }
  out.m_ = minimal_polynomial(p, iv0);
  if (out.m_.degree() == 1) return RealAlg(-out.m_.coeff(0));
  // isolate the root of the minimal polynomial inside iv0
  Sturm st(out.m_);
  RootInterval iv = iv0;
  if (st.count(iv.lo, iv.hi) != 1) throw std::logic_error("from_interval: factor lost the root");
  out.iv_ = iv;
  return out;
}

Poly minimal_polynomial(const Poly& p0, const RootInterval& iv) {
  Poly p = squarefree_part(p0);
  for (const auto& r : rational_roots(p)) {
    if ((r > iv.lo && r <= iv.hi) || (iv.lo == iv.hi && r == iv.lo)) return linear(r);
    p = p / linear(r);
  }
  p = p.monic();
  if (p.degree() <= 3) return p;
  if (p.degree() > 8) throw std::domain_error("minimal polynomial search limited to degree 8");
  RootInterval fine = refine(p, iv, Rational(1, BigInt(1) << 60));
  double r = to_double((fine.lo + fine.hi) / 2);
  auto zr = complex_roots(p);
  int j = 0;
  for (int i = 1; i < static_cast<int>(zr.size()); ++i)
    if (std::abs(zr[i] - r) < std::abs(zr[j] - r)) j = i;
  auto f = factor_through_roots(p, j, zr);
  if (!f) return p;
  Sturm st(*f);
  if (st.count(iv.lo, iv.hi) != 1) throw std::logic_error("minimal polynomial search mismatch");
  return *f;
}

Rational RealAlg::rational_value() const {
  if (!is_rational()) throw std::logic_error("irrational algebraic number " + str());
  return -m_.coeff(0);
}

double RealAlg::approx() const {
  if (is_rational()) return to_double(rational_value());
  RealAlg r = refined(Rational(1, BigInt(1) << 64));
  return to_double((r.iv_.lo + r.iv_.hi) / 2);
}

RealAlg RealAlg::refined(const Rational& w) const {
  if (is_rational()) return *this;
  RealAlg r = *this;
  r.iv_ = refine(m_, iv_, w);
  return r;
}

int RealAlg::sign() const { return compare(*this, RealAlg(Rational(0))); }

std::string RealAlg::str() const {
  if (is_rational()) return to_string(rational_value());
  std::ostringstream os;
  os << "root of " << m_.str() << " in (" << to_string(iv_.lo) << ", " << to_string(iv_.hi) << "] ~ "
     << approx();
  return os.str();
}

int compare(const RealAlg& a, const RealAlg& b) {
  if (a.is_rational() && b.is_rational()) {
    Rational x = a.rational_value(), y = b.rational_value();
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  if (a.minpoly() == b.minpoly()) {
    Sturm st(a.minpoly());
    int ia = st.variations_at_inf(-1) - st.variations_at(a.interval().hi);
    int ib = st.variations_at_inf(-1) - st.variations_at(b.interval().hi);
    return ia < ib ? -1 : (ia > ib ? 1 : 0);
  }
  // distinct minimal polynomials: distinct numbers, refine until separated
  RealAlg x = a, y = b;
  Rational w = std::max(x.interval().hi - x.interval().lo, y.interval().hi - y.interval().lo);
  for (int it = 0; it < 400; ++it) {
    if (x.interval().hi < y.interval().lo || (x.interval().hi == y.interval().lo && !y.is_rational()))
      return -1;
    if (y.interval().hi < x.interval().lo || (y.interval().hi == x.interval().lo && !x.is_rational()))
      return 1;
    w /= 2;
    x = x.refined(w);
    y = y.refined(w);
  }
  throw std::logic_error("compare: failed to separate algebraic numbers");
}

NFElem::NFElem(std::shared_ptr<const RealAlg> field, const Rational& r)
    : f_(std::move(field)), v_(Poly::constant(r)) {}

NFElem::NFElem(std::shared_ptr<const RealAlg> field, const Poly& v) : f_(std::move(field)) {
  v_ = v % f_->minpoly();
}

NFElem NFElem::generator(std::shared_ptr<const RealAlg> field) {
  return NFElem(field, Poly(std::vector<Rational>{0, 1}));
}

Rational NFElem::rational_value() const {
  if (!is_rational()) throw std::logic_error("field element is not rational");
  return v_.coeff(0);
}

double NFElem::approx() const {
  return static_cast<double>(v_.eval_ld(static_cast<long double>(f_->approx())));
}

std::string NFElem::str() const {
  if (is_rational()) return to_string(rational_value());
  std::ostringstream os;
  os << v_.str('g') << " ~ " << approx();
  return os.str();
}

NFElem operator+(const NFElem& a, const NFElem& b) { return NFElem(a.f_, a.v_ + b.v_); }
NFElem operator-(const NFElem& a, const NFElem& b) { return NFElem(a.f_, a.v_ - b.v_); }
NFElem operator*(const NFElem& a, const NFElem& b) { return NFElem(a.f_, a.v_ * b.v_); }
NFElem operator*(const Rational& s, const NFElem& a) { return NFElem(a.f_, s * a.v_); }
NFElem NFElem::operator-() const { return NFElem(f_, -v_); }

NFElem NFElem::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in number field");
  Poly g, s, t;
  ext_gcd(v_, f_->minpoly(), g, s, t);
  if (g.degree() != 0) throw std::logic_error("minimal polynomial is reducible");
  return NFElem(f_, s);
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

NFElem eval_at_generator(const Poly& p, const std::shared_ptr<const RealAlg>& field) {
  return NFElem(field, p);
}

double Endpoint::approx() const {
  return infinite ? std::numeric_limits<double>::infinity() : value.approx();
}

double Endpoint::theta() const {
  return infinite ? std::numbers::pi : 2.0 * std::atan(value.approx());
}

std::string Endpoint::str() const { return infinite ? "inf" : value.str(); }

bool operator==(const Endpoint& a, const Endpoint& b) {
  if (a.infinite || b.infinite) return a.infinite == b.infinite;
  return a.value == b.value;
}

int compare(const Endpoint& a, const Endpoint& b) {
  if (a.infinite && b.infinite) return 0;
  if (a.infinite) return 1;
  if (b.infinite) return -1;
  return compare(a.value, b.value);
}

bool strictly_between(const Endpoint& a, const Endpoint& p, const Endpoint& b) {
  int ab = compare(a, b);
  if (ab == 0) return p != a;  // full circle minus a point
  int ap = compare(a, p), pb = compare(p, b);
  if (ab < 0) return ap < 0 && pb < 0;
  return ap < 0 || pb < 0;  // arc wraps through infinity
}

bool Arc::contains(double x) const {
  double t = std::isinf(x) ? std::numbers::pi : 2.0 * std::atan(x);
  double a = lo.theta(), s = theta_span();
  double d = std::fmod(t - a + 4 * std::numbers::pi, 2 * std::numbers::pi);
  return d > 0 && d < s;
}

bool Arc::contains_infinity() const { return hi.infinite || contains(Endpoint::inf()); }

double Arc::theta_span() const {
  double d = hi.theta() - lo.theta();
  while (d <= 0) d += 2 * std::numbers::pi;
  return d;
}

double Arc::at(double s) const {
  double t = lo.theta() + s * theta_span();
  return std::tan(t / 2);
}

bool arcs_intersect(const Arc& a, const Arc& b) {
  return a.lo == b.lo || a.contains(b.lo) || b.contains(a.lo);
}

Endpoint mobius_image(const Endpoint& e, const Rational& a, const Rational& b, const Rational& c,
                      const Rational& d) {
  if (e.infinite) {
    if (c == 0) return Endpoint::inf();
    return Endpoint::finite(a / c);
  }
  if (e.value.is_rational()) {
    Rational x = e.value.rational_value();
    Rational den = c * x + d;
    if (den == 0) return Endpoint::inf();
    return Endpoint::finite((a * x + b) / den);
  }
  const RealAlg& g = e.value;
  RealAlg r = g;
  if (c != 0) {
    Rational pole = -d / c;
    Rational w = r.interval().hi - r.interval().lo;
    while (pole >= r.interval().lo && pole <= r.interval().hi) {
      w /= 2;
      r = r.refined(w);
    }
  }
  Poly np = homogeneous_transform(g.minpoly(), g.degree(), a, b, c, d);
  auto img = [&](const Rational& x) { return (a * x + b) / (c * x + d); };
  Rational u = img(r.interval().lo), v = img(r.interval().hi);
  RootInterval iv{std::min(u, v), std::max(u, v)};
  return Endpoint::finite(RealAlg::from_interval(np, iv));
}

}  // namespace ambitoric

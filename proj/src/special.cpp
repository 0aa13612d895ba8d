#include "ambitoric/special.hpp"

#include <cmath>
#include <random>

namespace ambitoric {

namespace {

Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// first arc between consecutive real roots (cyclically, through infinity)
// on which P is positive
std::optional<Arc> positive_arc(const Poly& P) {
  if (P.is_zero() || P.degree() > 4) return std::nullopt;
  std::vector<Endpoint> roots;
  for (const auto& iv : isolate_real_roots(P)) roots.push_back(Endpoint::finite(RealAlg::from_interval(P, iv)));
  if (roots.empty()) return std::nullopt;
  std::vector<Arc> arcs;
  for (size_t i = 0; i + 1 < roots.size(); ++i) arcs.push_back({roots[i], roots[i + 1]});
  arcs.push_back({roots.back(), Endpoint::inf()});
  arcs.push_back({Endpoint::inf(), roots.front()});
  for (const auto& a : arcs)
    if (positive_on(P, a, 4)) return a;
  return std::nullopt;
}

Quadratic random_combination(const Quadratic& u, const Quadratic& v, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  while (true) {
    Quadratic r = Rational(d(rng)) * u + Rational(d(rng)) * v;
    if (!r.is_zero()) return r;
  }
}

// two independent quadratics orthogonal to p
std::array<Quadratic, 2> perp_basis(const Quadratic& p) {
  // <p, r> = -p2 r0 + 2 p1 r1 - p0 r2
  std::array<Rational, 3> l{-p.c2, 2 * p.c1, -p.c0};
  std::vector<Quadratic> out;
  for (int i = 0; i < 3 && out.size() < 2; ++i)
    for (int j = i + 1; j < 3 && out.size() < 2; ++j) {
      // r with entries l_j at i, -l_i at j
      std::array<Rational, 3> r{0, 0, 0};
      r[i] = l[j];
      r[j] = -l[i];
      Quadratic cand(r[0], r[1], r[2]);
      if (cand.is_zero()) continue;
      if (!out.empty() && (proportional(cand, out[0]) || proportional(out[0], cand))) continue;
      out.push_back(cand);
    }
  if (out.size() < 2) throw std::logic_error("perp_basis: degenerate input");
  return {out[0], out[1]};
}

struct Line {
  Eigen::Vector2d n;
  double c;  // <n, mu> >= c inside
};

std::optional<Eigen::Vector2d> meet(const Line& a, const Line& b) {
  Eigen::Matrix2d M;
  M << a.n.transpose(), b.n.transpose();
  if (std::abs(M.determinant()) < 1e-14) return std::nullopt;
  return Eigen::Vector2d(M.inverse() * Eigen::Vector2d(a.c, b.c));
}

// Lines tangent to 4 mu1 mu2 = -1 (c^2 = -a b) with the given inward normals.
// Each offset has two signs; among the sign choices that close up into a
// convex polygon, prefer the one with most tangency points on their own edge.
StandardPolygon tangent_polygon(const std::vector<std::array<int, 2>>& normals, std::string name) {
  int n = static_cast<int>(normals.size());
  std::optional<StandardPolygon> best;
  int best_on = -1;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<Line> lines;
    bool skip = false;
    for (int i = 0; i < n; ++i) {
      double a = normals[i][0], b = normals[i][1];
      if (-a * b < 0) throw std::logic_error("normal has no tangent line");
      double c = std::sqrt(-a * b);
      if (c == 0 && (mask >> i & 1)) skip = true;
      lines.push_back({{a, b}, (mask >> i & 1) ? -c : c});
    }
    if (skip) continue;
    StandardPolygon sp;
    sp.name = name;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      auto v = meet(lines[(i + n - 1) % n], lines[i]);
      if (!v) ok = false;
      else sp.polygon.vertices.push_back(*v);
    }
    if (!ok) continue;
    for (int i = 0; i < n; ++i) {
      sp.polygon.normals.push_back({Rational(normals[i][0]), Rational(normals[i][1])});
      sp.polygon.offsets.push_back(lines[i].c);
    }
    if (!polygon_consistent(sp.polygon)) continue;
    int on = 0;
    for (int i = 0; i < n; ++i) {
      const Line& L = lines[i];
      if (L.c == 0) {
        sp.tangency.push_back(std::nullopt);  // an asymptote
        continue;
      }
      // a t - b / (4 t) = c has the double root t = c / (2 a)
      double t = L.c / (2 * L.n[0]);
      Eigen::Vector2d p(t, -1 / (4 * t));
      Eigen::Vector2d u = sp.polygon.vertices[i], w = sp.polygon.vertices[(i + 1) % n];
      double s = (p - u).dot(w - u) / (w - u).squaredNorm();
      if (s >= -1e-12 && s <= 1 + 1e-12) ++on;
      sp.tangency.push_back(p);
    }
    if (on > best_on) {
      best_on = on;
      best = std::move(sp);
    }
  }
  if (!best) throw std::logic_error("no tangent polygon with these normals");
  return *best;
}

}  // namespace

std::pair<RealAlg, RealAlg> kerr_roots(const KerrParams& k) {
  Poly A({-k.alpha * k.alpha, -2 * k.M, Rational(1)});
  return {RealAlg::root_of(A, 0), RealAlg::root_of(A, 1)};
}

AnsatzSpec kerr(const KerrParams& k, KerrRegion region, std::optional<Arc> interior_x) {
  Rational a = rabs(k.alpha);
  if (!(k.M > 0) || a == 0 || !(a < k.M))
    throw std::invalid_argument("Kerr parameters need 0 < |alpha| < M (M = " + to_string(k.M) +
                                ", alpha = " + to_string(k.alpha) + ")");
  AnsatzSpec s;
  s.name = region == KerrRegion::Exterior ? "kerr-exterior" : "kerr-interior";
  s.q = Quadratic(0, 1, 0);
  s.frame = *default_frame(s.q);
  s.A = Poly({-k.alpha * k.alpha, -2 * k.M, Rational(1)});
  s.B = Poly({k.alpha * k.alpha, Rational(0), Rational(-1)});
  auto [xm, xp] = kerr_roots(k);
  s.y_interval = {Endpoint::finite(-a), Endpoint::finite(a)};
  if (region == KerrRegion::Exterior) {
    s.x_interval = {Endpoint::finite(xp), Endpoint::inf()};
  } else {
    s.x_interval = interior_x ? *interior_x : Arc{Endpoint::finite(-a), Endpoint::finite(xm)};
  }
  s.metric = MetricChoice::gp(Quadratic(0, 0, 1));
  return s;
}

CSCViolation::CSCViolation(std::vector<std::string> v)
    : std::invalid_argument([&] {
        std::string m = "CSC data violates:";
        for (const auto& s : v) m += " [" + s + "]";
        return m;
      }()),
      violations(std::move(v)) {}

CSCResult csc_construct(const CSCData& d) {
  std::vector<std::string> bad;
  if (d.p.is_zero()) bad.push_back("p is zero");
  if (inner(d.p, d.q) != 0) bad.push_back("p not orthogonal to q");
  if (inner(d.rho, d.p) != 0) bad.push_back("rho not orthogonal to p");
  if (d.R.degree() > 4) bad.push_back("R has degree > 4");
  else if (inner(transvectant2(d.q, d.R), d.p) != 0) bad.push_back("(q,R)^(2) not orthogonal to p");
  if (!bad.empty()) throw CSCViolation(bad);

  CSCResult out;
  AnsatzSpec& s = out.spec;
  s.name = "csc";
  s.q = d.q;
  auto f = default_frame(d.q);
  if (!f) throw std::invalid_argument("q = " + d.q.str() + " has no default frame");
  s.frame = *f;
  Poly prho = d.p.poly() * d.rho.poly();
  s.A = prho + d.R;
  s.B = prho - d.R;
  auto X = d.x_interval ? d.x_interval : positive_arc(s.A);
  auto Y = d.y_interval ? d.y_interval : positive_arc(s.B);
  if (!X || !Y) throw std::invalid_argument("A or B has no positive arc between real roots");
  s.x_interval = *X;
  s.y_interval = *Y;
  s.metric = MetricChoice::gp(d.p);
  out.report.einstein = d.rho.is_zero() || proportional(d.rho, d.q).has_value();
  out.report.symmetric = d.R.is_zero();
  return out;
}

CSCData random_csc_data(const Quadratic& q, unsigned seed) {
  auto f = default_frame(q);
  if (!f) throw std::invalid_argument("q = " + q.str() + " has no default frame");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CSCData c;
    c.q = q;
    c.p = random_combination(f->e1, f->e2, rng);
    auto pb = perp_basis(c.p);
    c.rho = random_combination(pb[0], pb[1], rng);
    // <(q,R)^(2), p> is linear in the coefficients of R
    std::vector<Rational> r(5), lin(5);
    for (int k = 0; k < 5; ++k) {
      r[k] = d(rng);
      lin[k] = inner(transvectant2(q, Poly::monomial(1, k)), c.p);
    }
    int pivot = -1;
    for (int k = 0; k < 5; ++k)
      if (lin[k] != 0) pivot = k;
    if (pivot >= 0) {
      Rational acc = 0;
      for (int k = 0; k < 5; ++k)
        if (k != pivot) acc += lin[k] * r[k];
      r[pivot] = -acc / lin[pivot];
    }
    c.R = Poly(r);
    Poly prho = c.p.poly() * c.rho.poly();
    if (c.R.is_zero() || (prho + c.R).degree() < 1 || (prho - c.R).degree() < 1) continue;
    if (!positive_arc(prho + c.R) || !positive_arc(prho - c.R)) continue;
    return c;
  }
  throw std::runtime_error("random_csc_data: no admissible data found");
}

double scalar_closed_form(const AnsatzSpec& s, int sign, double x, double y) {
  double qxy = s.q.polar(x, y);
  double den = (x - y) * qxy;
  if (den == 0) throw std::domain_error("closed form has a pole on the fold locus");
  double F, Fx, Fy;
  if (sign < 0) {
    F = x - y;
    Fx = 1;
    Fy = -1;
  } else {
    F = qxy;
    Fx = s.q.polar_dx(y);
    Fy = s.q.polar_dx(x);
  }
  // (F^2, P)^(2) = F^2 P'' - 6 F F_z P' + 12 F_z^2 P, F affine in z
  auto tv = [&](const Poly& P, double z, double Fz) {
    Poly d1 = P.derivative(), d2 = d1.derivative();
    return F * F * d2(z) - 6 * F * Fz * d1(z) + 12 * Fz * Fz * P(z);
  };
  return -(tv(s.A, x, Fx) + tv(s.B, y, Fy)) / den;
}

StandardPolygon standard_polygon_cp2() { return tangent_polygon({{1, 0}, {0, -1}, {-1, 1}}, "cp2"); }

StandardPolygon standard_polygon_hirzebruch(int k) {
  if (k < 1) throw std::invalid_argument("Hirzebruch index must be >= 1");
  StandardPolygon sp =
      tangent_polygon({{1, 0}, {1, -1}, {-k - 1, k}, {-1, 1}}, "hirzebruch:" + std::to_string(k));
  const auto& n = sp.polygon.normals;
  sp.relation_holds = n[0][0] + n[2][0] == k * n[3][0] && n[0][1] + n[2][1] == k * n[3][1];
  return sp;
}

}  // namespace ambitoric

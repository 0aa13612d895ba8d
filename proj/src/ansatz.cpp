#include "ambitoric/ansatz.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>

namespace ambitoric {

std::string MetricChoice::str() const {
  switch (tag) {
    case Tag::G0: return "G0";
    case Tag::Gplus: return "G+";
    case Tag::Gminus: return "G-";
    case Tag::Gp: return "Gp(" + p.str() + ")";
  }
  return "?";
}

std::optional<Frame> default_frame(const Quadratic& q) {
  if (proportional(q, Quadratic(0, 1, 0))) return Frame{Quadratic(0, 0, 1), Quadratic(1, 0, 0)};
  if (proportional(q, Quadratic(0, 0, 1))) return Frame{Quadratic(0, 0, 1), Quadratic(0, Rational(1, 2), 0)};
  if (proportional(q, Quadratic(1, 0, 1))) return Frame{Quadratic(0, 1, 0), Quadratic(1, 0, -1)};
  return std::nullopt;
}

std::optional<ConicType> normal_form(const AnsatzSpec& s) {
  auto f = default_frame(s.q);
  if (!f || f->e1 != s.frame.e1 || f->e2 != s.frame.e2) return std::nullopt;
  return conic_type(s.q);
}

std::array<Rational, 2> frame_coords(const Frame& f, const Quadratic& p) {
  // columns e1, e2; rows c0, c1, c2
  std::array<std::array<Rational, 3>, 2> e{{{f.e1.c0, f.e1.c1, f.e1.c2}, {f.e2.c0, f.e2.c1, f.e2.c2}}};
  std::array<Rational, 3> v{p.c0, p.c1, p.c2};
  for (int r = 0; r < 3; ++r)
    for (int s = r + 1; s < 3; ++s) {
      Rational det = e[0][r] * e[1][s] - e[1][r] * e[0][s];
      if (det == 0) continue;
      Rational a = (v[r] * e[1][s] - e[1][r] * v[s]) / det;
      Rational b = (e[0][r] * v[s] - v[r] * e[0][s]) / det;
      if (a * f.e1 + b * f.e2 != p) throw std::invalid_argument("quadratic " + p.str() + " is not in the frame span");
      return {a, b};
    }
  throw std::invalid_argument("degenerate frame");
}

int default_grid() {
  if (const char* v = std::getenv("AMBITORIC_GRID")) {
    int n = std::atoi(v);
    if (n >= 4) return n;
  }
  return 48;
}

namespace {

// a rational point strictly inside a real arc (one that avoids infinity)
Rational interior_point(const Arc& a) {
  if (a.lo.infinite) {
    RealAlg h = a.hi.value.refined(1);
    return h.interval().lo - 1;
  }
  if (a.hi.infinite) {
    RealAlg l = a.lo.value.refined(1);
    return l.interval().hi + 1;
  }
  RealAlg l = a.lo.value, h = a.hi.value;
  Rational w = 1;
  while (true) {
    l = l.refined(w);
    h = h.refined(w);
    if (l.interval().hi < h.interval().lo) return (l.interval().hi + h.interval().lo) / 2;
    if (l.is_rational() && h.is_rational()) return (l.rational_value() + h.rational_value()) / 2;
    if (l.is_rational() && l.rational_value() < h.interval().lo) return (l.rational_value() + h.interval().lo) / 2;
    if (h.is_rational() && l.interval().hi < h.rational_value()) return (l.interval().hi + h.rational_value()) / 2;
    w /= 4;
  }
}

bool interior_has_infinity(const Arc& a) { return !a.lo.infinite && !a.hi.infinite && compare(a.lo, a.hi) > 0; }

}  // namespace

bool positive_on(const Poly& P, const Arc& arc, int weight) {
  if (P.is_zero()) return false;
  if (interior_has_infinity(arc)) {
    if (P.degree() != weight || P.leading() <= 0) return false;
  }
  for (const auto& iv : isolate_real_roots(P)) {
    Endpoint r = Endpoint::finite(RealAlg::from_interval(P, iv));
    if (arc.contains(r)) return false;
  }
  return P(interior_point(arc)) > 0;
}

void check_spec(const AnsatzSpec& s) {
  if (s.q.is_zero()) throw ValidationError("q is the zero polynomial");
  for (auto* arc : {&s.x_interval, &s.y_interval}) {
    const char* nm = arc == &s.x_interval ? "x_interval" : "y_interval";
    if (arc->lo == arc->hi) throw ValidationError(std::string(nm) + " is empty");
    if (interior_has_infinity(*arc))
      throw ValidationError(std::string(nm) +
                            " contains infinity in its interior; transport it with a gauge transformation first");
  }
  if (inner(s.frame.e1, s.q) != 0 || inner(s.frame.e2, s.q) != 0)
    throw ValidationError("frame quadratics must be orthogonal to q");
  if (proportional(s.frame.e1, s.frame.e2) || proportional(s.frame.e2, s.frame.e1))
    throw ValidationError("frame quadratics are linearly dependent");
  if (!positive_on(s.A, s.x_interval, 4))
    throw ValidationError("A(x) = " + s.A.str('x') + " is not positive on the open x_interval");
  if (!positive_on(s.B, s.y_interval, 4))
    throw ValidationError("B(y) = " + s.B.str('y') + " is not positive on the open y_interval");
  if (s.metric.tag == MetricChoice::Tag::Gp) {
    if (s.metric.p.is_zero()) throw ValidationError("Gp needs a nonzero p");
    if (inner(s.metric.p, s.q) != 0) throw ValidationError("Gp: p = " + s.metric.p.str() + " is not orthogonal to q");
  }
  if (s.lattice[0][0] * s.lattice[1][1] - s.lattice[0][1] * s.lattice[1][0] == 0)
    throw ValidationError("lattice generators are linearly dependent");
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

int sgn(double v) { return (v > 0) - (v < 0); }

Arc sub_arc(const Arc& whole, int i0, int i1, int n) {
  // cells i0..i1 of n; keep exact endpoints where the range reaches the box
  Arc a;
  a.lo = i0 == 0 ? whole.lo : Endpoint::finite(approximate(whole.at(double(i0) / n), BigInt(1) << 40));
  a.hi = i1 == n - 1 ? whole.hi : Endpoint::finite(approximate(whole.at(double(i1 + 1) / n), BigInt(1) << 40));
  return a;
}

}  // namespace

bool diagonal_meets(const AnsatzSpec& s) { return arcs_intersect(s.x_interval, s.y_interval); }

bool zero_locus_meets(const Quadratic& q, const Arc& X, const Arc& Y) {
  if (q.is_zero()) return true;
  Rational disc = q.c1 * q.c1 - q.c0 * q.c2;
  if (disc == 0) {
    // q(x,y) = c (x - r)(y - r), or a nonzero constant when r = inf
    if (q.c0 == 0) return false;
    Endpoint r = Endpoint::finite(-q.c1 / q.c0);
    return X.contains(r) || Y.contains(r);
  }
  // q(x,y) = 0  <=>  y = M(x), M = [[-q1, -q2], [q0, q1]]
  Mobius M(-q.c1, -q.c2, q.c0, q.c1);
  Arc img = M.det() > 0 ? Arc{M.apply(X.lo), M.apply(X.hi)} : Arc{M.apply(X.hi), M.apply(X.lo)};
  return arcs_intersect(img, Y);
}

bool q_curve_meets(const AnsatzSpec& s) { return zero_locus_meets(s.q, s.x_interval, s.y_interval); }

std::vector<BoxComponent> validate(const AnsatzSpec& s, int grid) {
  check_spec(s);
  const Arc& X = s.x_interval;
  const Arc& Y = s.y_interval;
  bool diag = diagonal_meets(s);
  bool qc = q_curve_meets(s);
  if (!diag && !qc) {
    BoxComponent c;
    c.x_range = X;
    c.y_range = Y;
    c.box_type = true;
    c.sample_x = X.at(0.5);
    c.sample_y = Y.at(0.5);
    c.sign_xy = sgn(c.sample_x - c.sample_y);
    c.sign_q = sgn(s.q.polar(c.sample_x, c.sample_y));
    return {c};
  }
  int n = grid > 0 ? grid : default_grid();
  std::vector<int> key(n * n);
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = X.at((i + 0.5) / n);
    ys[i] = Y.at((i + 0.5) / n);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = sgn(xs[i] - ys[j]), b = sgn(s.q.polar(xs[i], ys[j]));
      key[i * n + j] = (a + 1) * 3 + (b + 1);
    }
  UnionFind uf(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i + 1 < n && key[i * n + j] == key[(i + 1) * n + j]) uf.unite(i * n + j, (i + 1) * n + j);
      if (j + 1 < n && key[i * n + j] == key[i * n + j + 1]) uf.unite(i * n + j, i * n + j + 1);
    }
  std::map<int, BoxComponent> comps;
  std::map<int, std::array<int, 4>> bounds;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = key[i * n + j];
      if (k / 3 == 1 || k % 3 == 1) continue;  // cell centre exactly on a fold
      int r = uf.find(i * n + j);
      auto [it, fresh] = comps.try_emplace(r);
      auto& c = it->second;
      if (fresh) {
        c.sign_xy = k / 3 - 1;
        c.sign_q = k % 3 - 1;
        c.grid_n = n;
        bounds[r] = {i, i, j, j};
      }
      c.cells.emplace_back(i, j);
      auto& b = bounds[r];
      b = {std::min(b[0], i), std::max(b[1], i), std::min(b[2], j), std::max(b[3], j)};
    }
  std::vector<BoxComponent> out;
  for (auto& [r, c] : comps) {
    auto b = bounds[r];
    c.x_range = sub_arc(X, b[0], b[1], n);
    c.y_range = sub_arc(Y, b[2], b[3], n);
    auto mid = c.cells[c.cells.size() / 2];
    c.sample_x = xs[mid.first];
    c.sample_y = ys[mid.second];
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const BoxComponent& a, const BoxComponent& b) {
    if (a.cells.front() != b.cells.front()) return a.cells.front() < b.cells.front();
    return a.sign_xy < b.sign_xy;
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].label = static_cast<int>(i);
  return out;
}

double conformal_factor(const AnsatzSpec& s, double x, double y) {
  if (x == y) throw std::domain_error("conformal factor pole: x - y = 0");
  return s.q.polar(x, y) / (x - y);
}

double fibre_volume(const AnsatzSpec& s, const MetricChoice& g, double x, double y) {
  double num = s.A(x) * s.B(y);
  double q = s.q.polar(x, y), d = x - y, den = 0;
  switch (g.tag) {
    case MetricChoice::Tag::Gplus: den = std::pow(q, 4); break;
    case MetricChoice::Tag::G0: den = d * d * q * q; break;
    case MetricChoice::Tag::Gminus: den = std::pow(d, 4); break;
    case MetricChoice::Tag::Gp: den = std::pow(g.p.polar(x, y), 4); break;
  }
  if (den == 0) return std::copysign(std::numeric_limits<double>::infinity(), num);
  return num / den;
}

namespace {

Arc transport_arc(const Arc& a, const Mobius& m) {
  if (m.det() > 0) return Arc{m.apply(a.lo), m.apply(a.hi)};
  return Arc{m.apply(a.hi), m.apply(a.lo)};
}

}  // namespace

AnsatzSpec mobius_transport(const AnsatzSpec& s, const Mobius& m) {
  Endpoint pole = m.pole();
  if (s.x_interval.contains(pole) || s.y_interval.contains(pole))
    throw std::invalid_argument("gauge transport: an interval contains the pole " + pole.str() +
                                " of " + m.str() + "; use the split variant");
  AnsatzSpec t = s;
  t.q = transport_quadratic(s.q, m);
  t.frame = {transport_quadratic(s.frame.e1, m), transport_quadratic(s.frame.e2, m)};
  t.A = transport_quartic(s.A, m);
  t.B = transport_quartic(s.B, m);
  if (s.metric.tag == MetricChoice::Tag::Gp) t.metric.p = transport_quadratic(s.metric.p, m);
  t.x_interval = transport_arc(s.x_interval, m);
  t.y_interval = transport_arc(s.y_interval, m);
  return t;
}

std::vector<AnsatzSpec> mobius_transport_split(const AnsatzSpec& s, const Mobius& m) {
  Endpoint pole = m.pole();
  auto pieces = [&](const Arc& a) {
    if (!a.contains(pole)) return std::vector<Arc>{a};
    return std::vector<Arc>{Arc{a.lo, pole}, Arc{pole, a.hi}};
  };
  std::vector<AnsatzSpec> out;
  for (const auto& xa : pieces(s.x_interval))
    for (const auto& ya : pieces(s.y_interval)) {
      AnsatzSpec piece = s;
      piece.x_interval = xa;
      piece.y_interval = ya;
      out.push_back(mobius_transport(piece, m));
    }
  return out;
}

}  // namespace ambitoric

#include "ambitoric/boundary.hpp"

#include "ambitoric/tensors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace ambitoric {

namespace {

using Tag = MetricChoice::Tag;

int sgn(double v) { return (v > 0) - (v < 0); }

// exact zero test for the polarization p(a, b) on RP1 x RP1
bool polar_zero(const Quadratic& p, const Endpoint& a, const Endpoint& b) {
  if (p.is_zero()) return true;
  if (a.infinite && b.infinite) return p.c0 == 0;
  if (a.infinite || b.infinite) {
    const Endpoint& w = a.infinite ? b : a;
    if (p.c0 == 0) return p.c1 == 0;
    return w == Endpoint::finite(-p.c1 / p.c0);
  }
  Rational disc = p.c1 * p.c1 - p.c0 * p.c2;
  if (disc == 0) {
    if (p.c0 == 0) return false;  // nonzero constant
    Endpoint r = Endpoint::finite(-p.c1 / p.c0);
    return a == r || b == r;
  }
  return b == mobius_image(a, -p.c1, -p.c2, p.c0, p.c1);
}

// p(gamma, .) vanishes identically (gamma a double root of p, possibly inf)
bool polar_vanishes_along(const Quadratic& p, const Endpoint& g) {
  if (g.infinite) return p.c0 == 0 && p.c1 == 0;
  if (!g.value.is_rational()) return false;
  Rational v = g.value.rational_value();
  return p.c0 * v + p.c1 == 0 && p.c1 * v + p.c2 == 0;
}

double locus_value(const AnsatzSpec& s, const MetricChoice& g, int locus, double x, double y) {
  if (locus == 1) return x - y;
  if (locus == -1) return s.q.polar(x, y);
  return g.p.polar(x, y);
}

Eigen::Vector2d locus_gradient(const AnsatzSpec& s, const MetricChoice& g, int locus, double x, double y) {
  if (locus == 1) return {1, -1};
  const Quadratic& p = locus == -1 ? s.q : g.p;
  return {p.polar_dx(y), p.polar_dx(x)};
}

std::string edge_label(Axis a, const Endpoint& g) { return std::string(a == Axis::X ? "x=" : "y=") + g.str(); }

// Frame coordinates as an exact linear map on (c0, c1, c2).
std::array<std::array<Rational, 3>, 2> frame_coord_matrix(const Frame& f) {
  std::array<std::array<Rational, 3>, 2> e{{{f.e1.c0, f.e1.c1, f.e1.c2}, {f.e2.c0, f.e2.c1, f.e2.c2}}};
  for (int r = 0; r < 3; ++r)
    for (int t = r + 1; t < 3; ++t) {
      Rational det = e[0][r] * e[1][t] - e[1][r] * e[0][t];
      if (det == 0) continue;
      std::array<std::array<Rational, 3>, 2> M{};
      for (auto& row : M) row.fill(Rational(0));
      // a = (v_r e2_t - e2_r v_t)/det, b = (e1_r v_t - v_r e1_t)/det
      M[0][r] = e[1][t] / det;
      M[0][t] = -e[1][r] / det;
      M[1][r] = -e[0][t] / det;
      M[1][t] = e[0][r] / det;
      return M;
    }
  throw std::invalid_argument("degenerate frame");
}

struct LocalEdge {
  Quadratic q;
  Frame frame;
  Poly P;  // A or B
  std::optional<Quadratic> p;
  Endpoint gamma;  // finite
};

LocalEdge local_edge(const AnsatzSpec& s, const MetricChoice& g, const BoundaryComponent& e) {
  LocalEdge L{s.q, s.frame, e.axis == Axis::X ? s.A : s.B, std::nullopt, e.gamma};
  if (g.tag == Tag::Gp) L.p = g.p;
  if (!e.gamma.infinite) return L;
  // z -> -1/z sends the edge to 0; orders and normals are gauge invariant
  if (L.P.degree() > 4)
    throw std::invalid_argument("edge at infinity needs deg " + std::string(e.axis == Axis::X ? "A" : "B") +
                                " <= 4");
  Mobius inv = Mobius::inversion();
  L.q = transport_quadratic(s.q, inv);
  L.frame = {transport_quadratic(s.frame.e1, inv), transport_quadratic(s.frame.e2, inv)};
  L.P = transport_quartic(L.P, inv);
  if (L.p) L.p = transport_quadratic(*L.p, inv);
  L.gamma = Endpoint::finite(Rational(0));
  return L;
}

int root_order(const Poly& P, const RealAlg& g) {
  if (g.is_rational()) return multiplicity_at(P, g.rational_value());
  return multiplicity(P, g.minpoly());
}

CompatibleNormal compatible_normal(const LocalEdge& L, Axis axis, const Mat2Q& lattice) {
  auto field = std::make_shared<const RealAlg>(L.gamma.value);
  NFElem g = NFElem::generator(field);
  auto K = [&](const Rational& r) { return NFElem(field, r); };
  const Quadratic& q = L.q;
  // p^(g) = (c0 g + c1) z^2 + (c2 - c0 g^2) z - g (c1 g + c2)
  std::array<NFElem, 3> v{q.c0 * g + K(q.c1), Rational(1, 2) * (K(q.c2) - q.c0 * (g * g)),
                          -(g * (q.c1 * g + K(q.c2)))};
  auto M = frame_coord_matrix(L.frame);
  NFElem dP = eval_at_generator(L.P.derivative(), field);
  Rational scale = axis == Axis::X ? Rational(-2) : Rational(2);
  std::array<NFElem, 2> n{K(0), K(0)};
  for (int i = 0; i < 2; ++i) {
    NFElem c = K(0);
    for (int j = 0; j < 3; ++j) c = c + M[i][j] * v[j];
    n[i] = scale * (c / dP);
  }
  CompatibleNormal out;
  out.rational = n[0].is_rational() && n[1].is_rational();
  for (int i = 0; i < 2; ++i) {
    out.approx[i] = n[i].approx();
    out.repr[i] = n[i].str();
    if (out.rational) out.exact[i] = n[i].rational_value();
  }
  if (out.rational) {
    out.in_lattice = in_lattice(lattice, out.exact);
  } else {
    // Lambda^-1 n must be rational and integral
    Rational det = lattice[0][0] * lattice[1][1] - lattice[0][1] * lattice[1][0];
    NFElem c0 = (lattice[1][1] / det) * n[0] - (lattice[0][1] / det) * n[1];
    NFElem c1 = (lattice[0][0] / det) * n[1] - (lattice[1][0] / det) * n[0];
    out.in_lattice = c0.is_rational() && c1.is_rational() && is_integer(c0.rational_value()) &&
                     is_integer(c1.rational_value());
  }
  return out;
}

// cells of the component, on the validation grid (the whole grid for box type)
std::vector<std::pair<int, int>> component_cells(const BoxComponent& c, int& n) {
  if (!c.box_type) {
    n = c.grid_n;
    return c.cells;
  }
  n = default_grid();
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// A point of {phi = 0} between a component cell and an outside one.
struct Crossing {
  double x, y;
  int side;
};

std::optional<Crossing> find_crossing(const AnsatzSpec& s, const MetricChoice& g, int locus,
                                      const std::vector<std::pair<int, int>>& cells, int n,
                                      const std::vector<char>& inside) {
  const Arc& X = s.x_interval;
  const Arc& Y = s.y_interval;
  auto cx = [&](int i) { return X.at((i + 0.5) / n); };
  auto cy = [&](int j) { return Y.at((j + 0.5) / n); };
  std::vector<std::array<int, 4>> pairs;
  const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
  for (auto [i, j] : cells) {
    double a = locus_value(s, g, locus, cx(i), cy(j));
    if (a == 0) continue;
    for (int k = 0; k < 4; ++k) {
      int i2 = i + di[k], j2 = j + dj[k];
      if (i2 < 0 || j2 < 0 || i2 >= n || j2 >= n) continue;
      double b = locus_value(s, g, locus, cx(i2), cy(j2));
      if (sgn(b) == sgn(a)) continue;
      // a P-locus crossing must stay inside the component; folds bound it
      if (locus == 0 && !inside[i2 * n + j2]) continue;
      pairs.push_back({i, j, i2, j2});
    }
  }
  if (pairs.empty()) return std::nullopt;
  // keep away from the other singular loci and from the box sides
  auto clearance = [&](const std::array<int, 4>& pr) {
    double x = 0.5 * (cx(pr[0]) + cx(pr[2])), y = 0.5 * (cy(pr[1]) + cy(pr[3]));
    double d = std::min({pr[0], pr[2], pr[1], pr[3], n - 1 - pr[0], n - 1 - pr[2], n - 1 - pr[1], n - 1 - pr[3]}) > 0
                   ? INFINITY
                   : 0.0;
    for (int other : {1, -1, 0}) {
      if (other == locus || (other == 0 && g.tag != Tag::Gp)) continue;
      double gn = locus_gradient(s, g, other, x, y).norm();
      if (gn > 0) d = std::min(d, std::abs(locus_value(s, g, other, x, y)) / gn);
    }
    return d;
  };
  auto best = std::max_element(pairs.begin(), pairs.end(),
                               [&](const auto& a, const auto& b) { return clearance(a) < clearance(b); });
  auto [i, j, i2, j2] = *best;
  double x0 = cx(i), y0 = cy(j), x1 = cx(i2), y1 = cy(j2);
  double f0 = locus_value(s, g, locus, x0, y0);
  int side = sgn(f0);
  double lo = 0, hi = 1;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    double m = 0.5 * (lo + hi);
    double v = locus_value(s, g, locus, x0 + m * (x1 - x0), y0 + m * (y1 - y0));
    if (sgn(v) == side)
      lo = m;
    else
      hi = m;
  }
  double t = 0.5 * (lo + hi);
  return Crossing{x0 + t * (x1 - x0), y0 + t * (y1 - y0), side};
}

}  // namespace

std::string to_string(DistanceStatus::Verdict v) {
  return v == DistanceStatus::Verdict::Finite ? "finite" : "infinitely-distant";
}

std::array<Rational, 2> lattice_coordinates(const Mat2Q& L, const std::array<Rational, 2>& v) {
  // L[i][j]: row i, column j; columns are generators
  Rational det = L[0][0] * L[1][1] - L[0][1] * L[1][0];
  if (det == 0) throw std::invalid_argument("singular lattice");
  return {(L[1][1] * v[0] - L[0][1] * v[1]) / det, (L[0][0] * v[1] - L[1][0] * v[0]) / det};
}

bool in_lattice(const Mat2Q& L, const std::array<Rational, 2>& v) {
  auto c = lattice_coordinates(L, v);
  return is_integer(c[0]) && is_integer(c[1]);
}

std::vector<BoundaryComponent> decompose_boundary(const AnsatzSpec& s, const BoxComponent& c) {
  const Arc& X = s.x_interval;
  const Arc& Y = s.y_interval;
  const MetricChoice& g = s.metric;
  bool gp = g.tag == Tag::Gp;
  int n = 0;
  auto cells = component_cells(c, n);
  std::vector<char> inside(n * n, 0);
  for (auto [i, j] : cells) inside[i * n + j] = 1;

  std::vector<BoundaryComponent> out;
  // edges: lo/hi of X, lo/hi of Y, when the component reaches that side
  int edge_index[2][2] = {{-1, -1}, {-1, -1}};
  for (int ax = 0; ax < 2; ++ax)
    for (int hi = 0; hi < 2; ++hi) {
      bool touches = c.box_type;
      for (auto [i, j] : cells)
        if ((ax == 0 ? i : j) == (hi ? n - 1 : 0)) touches = true;
      if (!touches) continue;
      BoundaryComponent e;
      e.kind = BoundaryComponent::Kind::Edge;
      e.axis = ax == 0 ? Axis::X : Axis::Y;
      const Arc& I = ax == 0 ? X : Y;
      e.gamma = hi ? I.hi : I.lo;
      e.is_fold_and_edge = polar_vanishes_along(s.q, e.gamma);
      e.p_edge = gp && polar_vanishes_along(g.p, e.gamma);
      if (e.is_fold_and_edge) e.fold_sign = -1;
      e.label = "edge " + edge_label(e.axis, e.gamma);
      edge_index[ax][hi] = static_cast<int>(out.size());
      out.push_back(std::move(e));
    }
  // corners
  for (int hx = 0; hx < 2; ++hx)
    for (int hy = 0; hy < 2; ++hy) {
      int ex = edge_index[0][hx], ey = edge_index[1][hy];
      if (ex < 0 || ey < 0) continue;
      if (!c.box_type && !inside[(hx ? n - 1 : 0) * n + (hy ? n - 1 : 0)]) continue;
      BoundaryComponent k;
      k.kind = BoundaryComponent::Kind::Corner;
      k.cx = hx ? X.hi : X.lo;
      k.cy = hy ? Y.hi : Y.lo;
      k.on_positive_fold = k.cx == k.cy;
      k.on_negative_fold = polar_zero(s.q, k.cx, k.cy);
      k.on_p = gp && polar_zero(g.p, k.cx, k.cy);
      k.adjacent = {ex, ey};
      k.label = "corner (" + k.cx.str() + ", " + k.cy.str() + ")";
      int idx = static_cast<int>(out.size());
      out[ex].adjacent.push_back(idx);
      out[ey].adjacent.push_back(idx);
      out.push_back(std::move(k));
    }
  // proper folds and the P-locus
  auto add_locus = [&](int locus) {
    auto cr = find_crossing(s, g, locus, cells, n, inside);
    if (!cr) return;
    BoundaryComponent f;
    f.kind = locus == 0 ? BoundaryComponent::Kind::PLocus : BoundaryComponent::Kind::Fold;
    f.fold_sign = locus;
    f.proper = true;
    f.sample_x = cr->x;
    f.sample_y = cr->y;
    f.side = cr->side;
    f.label = locus == 1 ? "fold+ x=y" : locus == -1 ? "fold- q(x,y)=0" : "P-locus p(x,y)=0";
    out.push_back(std::move(f));
  };
  if (!c.box_type) {
    if (diagonal_meets(s)) add_locus(1);
    if (q_curve_meets(s)) add_locus(-1);
  }
  if (gp && zero_locus_meets(g.p, X, Y)) add_locus(0);
  return out;
}

DistanceStatus edge_status(const AnsatzSpec& s, const MetricChoice& g, const BoundaryComponent& edge) {
  if (edge.kind != BoundaryComponent::Kind::Edge) throw std::invalid_argument("edge_status needs an edge");
  LocalEdge L = local_edge(s, g, edge);
  const RealAlg& gv = L.gamma.value;
  int m = root_order(L.P, gv);
  bool fold = polar_vanishes_along(L.q, L.gamma);
  bool pe = L.p && polar_vanishes_along(*L.p, L.gamma);
  if (m == 0 && !fold && !pe) {
    std::string which = edge.axis == Axis::X ? "A" : "B";
    throw std::invalid_argument(edge_label(edge.axis, edge.gamma) + " is not a boundary: " + which +
                                " is positive there and no fold or P-locus meets it");
  }
  int ordq = fold ? 1 : 0, ordp = pe ? 1 : 0;
  int k = 0;
  switch (g.tag) {
    case Tag::G0: k = 0; break;
    case Tag::Gplus: k = -ordq; break;
    case Tag::Gminus: k = ordq; break;
    case Tag::Gp: k = ordq - 2 * ordp; break;
  }
  DistanceStatus st;
  st.metric = g;
  st.multiplicity = m;
  st.factor_order = k;
  bool finite = k - m > -2;
  st.verdict = finite ? DistanceStatus::Verdict::Finite : DistanceStatus::Verdict::InfinitelyDistant;
  st.integral_convergent = finite;
  std::ostringstream note;
  note << "root order " << m << ", factor order " << k << (finite ? ": integral converges" : ": integral diverges");
  if (fold) note << "; fold-edge";
  if (pe) note << "; P-edge";
  st.note = note.str();
  // a fold-edge has p^(gamma) = 0: no normal there
  if (finite && m == 1 && !fold) st.compatible_normal = compatible_normal(L, edge.axis, s.lattice);
  return st;
}

double analytic_exponent(const MetricChoice& g, int locus) {
  // r = -1/2 ord(F) for the conformal factor F = g / g0 along the locus
  int ord = 0;
  switch (g.tag) {
    case Tag::G0:
      if (locus == 0) throw std::invalid_argument("P-locus needs a Gp metric");
      return 0;
    case Tag::Gplus:
      if (locus == 0) throw std::invalid_argument("P-locus needs a Gp metric");
      ord = locus == 1 ? 1 : -1;
      break;
    case Tag::Gminus:
      if (locus == 0) throw std::invalid_argument("P-locus needs a Gp metric");
      ord = locus == 1 ? -1 : 1;
      break;
    case Tag::Gp:
      if (locus == 1) ord = 1;
      else if (locus == -1) ord = 1;
      else ord = -2;
      break;
  }
  return -0.5 * ord;
}

std::optional<double> fitted_exponent(const AnsatzSpec& s, const MetricChoice& g, int locus, double x0,
                                      double y0, int side) {
  Eigen::Vector2d grad = locus_gradient(s, g, locus, x0, y0);
  double gn = grad.norm();
  if (gn == 0) return std::nullopt;
  Eigen::Vector2d d = side * grad / gn;
  std::vector<double> lx, ly;
  for (int k = 0; k < 30; ++k) {
    double phi = 1e-6 * std::pow(1e3, k / 29.0);
    double x = x0 + phi / gn * d[0], y = y0 + phi / gn * d[1];
    double v = locus_value(s, g, locus, x, y);
    if (sgn(v) != side) continue;
    Eigen::Matrix2d Gxy;
    try {
      Gxy = metric_matrix(s, g, x, y).topLeftCorner<2, 2>();
    } catch (const std::exception&) {
      continue;
    }
    Eigen::Vector2d dphi = locus_gradient(s, g, locus, x, y);
    // the metric is block diagonal: the xy block of G^-1 is the inverse of G_xy
    double n2 = dphi.dot(Gxy.inverse() * dphi);
    if (!(n2 > 0) || !std::isfinite(n2)) continue;
    lx.push_back(std::log(std::abs(v)));
    ly.push_back(0.5 * std::log(n2));
  }
  if (lx.size() < 20) return std::nullopt;
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= lx.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

DistanceStatus fold_status(const AnsatzSpec& s, const MetricChoice& g, const BoundaryComponent& fold) {
  using K = BoundaryComponent::Kind;
  if (fold.kind != K::Fold && fold.kind != K::PLocus) throw std::invalid_argument("fold_status needs a fold");
  int locus = fold.kind == K::PLocus ? 0 : fold.fold_sign;
  MetricChoice eff = g;
  // Gp with p a multiple of (null) q is a constant multiple of G+
  if (g.tag == Tag::Gp && proportional(g.p, s.q)) eff = MetricChoice::gplus();
  if (locus == 0 && eff.tag != Tag::Gp) locus = -1;
  DistanceStatus st;
  st.metric = g;
  st.r_exponent = analytic_exponent(eff, locus);
  st.verdict = *st.r_exponent >= 1 ? DistanceStatus::Verdict::InfinitelyDistant : DistanceStatus::Verdict::Finite;
  st.r_numeric = fitted_exponent(s, g, fold.kind == K::PLocus ? 0 : fold.fold_sign, fold.sample_x, fold.sample_y,
                                 fold.side);
  std::ostringstream note;
  note << "r = " << *st.r_exponent;
  if (st.r_numeric) note << ", fitted " << *st.r_numeric;
  st.note = note.str();
  return st;
}

CornerStatus corner_status(const AnsatzSpec& s, const MetricChoice& g, const BoundaryComponent& corner,
                           const std::vector<DistanceStatus>& adjacent) {
  (void)s;
  CornerStatus out;
  out.status.metric = g;
  for (const auto& a : adjacent)
    if (a.infinitely_distant()) {
      out.status.verdict = DistanceStatus::Verdict::InfinitelyDistant;
      out.reason = "meets an infinitely distant component";
      return out;
    }
  out.status.verdict = DistanceStatus::Verdict::Finite;
  bool gp = g.tag == Tag::Gp;
  if (corner.on_positive_fold && !(g.tag == Tag::Gplus || gp)) {
    out.admissible = false;
    out.reason = "finite corner on the positive fold needs G+ or Gp";
  } else if (corner.on_negative_fold && !(g.tag == Tag::Gminus || gp)) {
    out.admissible = false;
    out.reason = "finite corner on the negative fold needs G- or Gp";
  } else if (gp && corner.on_p) {
    out.admissible = false;
    out.reason = "finite corner on the P-locus";
  } else {
    out.reason = corner.on_positive_fold || corner.on_negative_fold ? "finite fold corner" : "finite corner";
  }
  return out;
}

QuadratureProbe edge_integral_probe(const Poly& A, const Rational& gamma, int side, double len) {
  // Taylor coefficients at gamma, exact, then scaled by (side len)^j
  int d = A.degree();
  std::vector<long double> lb(d + 1, 0);
  std::vector<int> sg(d + 1, 0);
  Poly D = A;
  Rational fact = 1;
  for (int j = 0; j <= d; ++j) {
    if (j > 0) {
      D = D.derivative();
      fact *= j;
    }
    Rational b = D(gamma) / fact;
    if (b == 0) continue;
    long double v = to_long_double(b) * std::pow(static_cast<long double>(side * len), j);
    sg[j] = v > 0 ? 1 : -1;
    lb[j] = std::log(std::fabs(v));
  }
  // log of the integrand len e^-u / sqrt|A(gamma + side len e^-u)|
  auto log_integrand = [&](long double u) {
    long double mx = -INFINITY;
    for (int j = 0; j <= d; ++j)
      if (sg[j]) mx = std::max(mx, lb[j] - j * u);
    long double sum = 0;
    for (int j = 0; j <= d; ++j)
      if (sg[j]) sum += sg[j] * std::exp(lb[j] - j * u - mx);
    return std::log(static_cast<long double>(len)) - u - 0.5L * (mx + std::log(std::fabs(sum)));
  };
  auto f = [&](double u) { return static_cast<double>(std::exp(log_integrand(u))); };
  QuadratureProbe out;
  double u = 0, w = 1, total = 0;
  int quiet = 0;
  while (u < 1e7) {
    double part = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, u, u + w, 5, 1e-12);
    total += part;
    u += w;
    if (!std::isfinite(total) || total > 1e6) {
      out.convergent = false;
      break;
    }
    if (u > 40 && part < 1e-14 * total) {
      if (++quiet >= 3) {
        out.convergent = true;
        break;
      }
    } else {
      quiet = 0;
    }
    // stretch the blocks once the integrand has settled into its tail
    double r = f(u) / f(u - w);
    if (r > 0.99 && r < 1.01) w = std::min(2 * w, 1e5);
  }
  out.partial = total;
  out.reach = u;
  return out;
}

}  // namespace ambitoric

#include "ambitoric/moment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ambitoric {

using Eigen::Vector2d;

namespace {

// Exact solution of an overdetermined but consistent system with full column
// rank; nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  size_t rows = A.size(), cols = A[0].size();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && A[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    std::swap(b[p], b[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational f = A[i][c] / A[r][c];
      for (size_t k = c; k < cols; ++k) A[i][k] -= f * A[r][k];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  if (pivots.size() != cols) return std::nullopt;
  std::vector<Rational> x(cols);
  for (size_t i = 0; i < r; ++i) x[pivots[i]] = b[i] / A[i][pivots[i]];
  return x;
}

// the normalizing functional for preimages under p -> bracket(p, q)
Quadratic gauge_vector(const Quadratic& q) {
  if (inner(q, q) != 0) return q;
  for (auto r : {Quadratic(1, 0, 0), Quadratic(0, 0, 1), Quadratic(0, 1, 0)})
    if (inner(q, r) != 0) return r;
  throw std::logic_error("gauge_vector: q = 0");
}

// P with bracket(P, q) = e and <r, P> = 0
Quadratic bracket_preimage(const Quadratic& q, const Quadratic& e) {
  Quadratic basis[3] = {Quadratic(1, 0, 0), Quadratic(0, 1, 0), Quadratic(0, 0, 1)};
  std::vector<std::vector<Rational>> A(4, std::vector<Rational>(3));
  for (int j = 0; j < 3; ++j) {
    Quadratic im = bracket(basis[j], q);
    A[0][j] = im.c0;
    A[1][j] = im.c1;
    A[2][j] = im.c2;
  }
  Quadratic r = gauge_vector(q);
  // <r, P> = 2 r1 P1 - r2 P0 - r0 P2
  A[3] = {-r.c2, 2 * r.c1, -r.c0};
  auto sol = solve_exact(A, {e.c0, e.c1, e.c2, 0});
  if (!sol) throw std::invalid_argument("quadratic " + e.str() + " is not orthogonal to q");
  return Quadratic((*sol)[0], (*sol)[1], (*sol)[2]);
}

void require_nonzero(double v, const char* what) {
  if (v == 0 || !std::isfinite(v)) throw std::domain_error(std::string("moment map pole: ") + what + " = 0");
}

// P(x,y) / den(x,y), den = q(x,y) (sign +) or x - y (sign -), with the limit
// when one slot is infinite
double polar_ratio(const Quadratic& P, const Quadratic& q, int sign, double x, double y) {
  bool xi = std::isinf(x), yi = std::isinf(y);
  if (xi && yi) throw std::domain_error("moment map at (inf, inf) is undefined");
  if (!xi && !yi) {
    double den = sign > 0 ? q.polar(x, y) : x - y;
    require_nonzero(den, sign > 0 ? "q(x,y)" : "x - y");
    return P.polar(x, y) / den;
  }
  double o = xi ? y : x;
  double num = P.c0d() * o + P.c1d();
  double den = sign > 0 ? q.c0d() * o + q.c1d() : (xi ? 1.0 : -1.0);
  require_nonzero(den, sign > 0 ? "q(x,y)" : "x - y");
  return num / den;
}

std::array<double, 2> frame_coords_d(const Frame& f, double c0, double c1, double c2) {
  Eigen::Matrix<double, 3, 2> E;
  E << f.e1.c0d(), f.e2.c0d(), f.e1.c1d(), f.e2.c1d(), f.e1.c2d(), f.e2.c2d();
  Eigen::Vector2d ab = E.colPivHouseholderQr().solve(Eigen::Vector3d(c0, c1, c2));
  return {ab(0), ab(1)};
}

std::array<BigInt, 2> primitive_pair(const std::array<Rational, 2>& v) {
  namespace bmp = boost::multiprecision;
  BigInt l = 1;
  for (const auto& r : v) {
    BigInt d = bmp::denominator(r);
    l = l / bmp::gcd(l, d) * d;
  }
  BigInt a = bmp::numerator(Rational(v[0] * l)), b = bmp::numerator(Rational(v[1] * l));
  BigInt g = bmp::gcd(bmp::abs(a), bmp::abs(b));
  if (g == 0) throw std::invalid_argument("zero normal");
  return {a / g, b / g};
}

double cross(const Vector2d& o, const Vector2d& a, const Vector2d& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

}  // namespace

std::array<Quadratic, 2> plus_numerators(const AnsatzSpec& s) {
  return {bracket_preimage(s.q, s.frame.e1), bracket_preimage(s.q, s.frame.e2)};
}

MomentPoint moment_map(const AnsatzSpec& s, int sign, double x, double y) {
  if (sign > 0) {
    auto P = plus_numerators(s);
    return {-polar_ratio(P[0], s.q, 1, x, y), -polar_ratio(P[1], s.q, 1, x, y)};
  }
  return {-polar_ratio(s.frame.e1, s.q, -1, x, y), -polar_ratio(s.frame.e2, s.q, -1, x, y)};
}

std::array<Rational, 2> identify_t(const AnsatzSpec& s, const Quadratic& p, int sign) {
  if (inner(p, s.q) != 0) throw std::invalid_argument("identify_t: " + p.str() + " is not orthogonal to q");
  return frame_coords(s.frame, sign > 0 ? bracket(p, s.q) : p);
}

double Conic::operator()(const Vector2d& m) const {
  Eigen::Vector3d v(m.x(), m.y(), 1);
  return v.dot(Q * v);
}

std::pair<double, double> fold_point(const AnsatzSpec& s, int sign, double t) {
  if (sign > 0) return {t, t};
  const Quadratic& q = s.q;
  if (conic_type(q) == ConicType::Parabolic) {
    // q(x,y) = c (x - r)(y - r): the fold is the line x = r
    double r = q.c0 == 0 ? INFINITY : -q.c1d() / q.c0d();
    return {r, t};
  }
  double den = q.c0d() * t + q.c1d();
  double y = den == 0 ? INFINITY : -(q.c1d() * t + q.c2d()) / den;
  return {t, y};
}

Conic fold_conic(const AnsatzSpec& s, int sign) {
  Conic c;
  ConicType type = conic_type(s.q);
  if (sign < 0 && type == ConicType::Parabolic) {
    // mu- is constant along each of the two fold lines x = r, y = r
    c.degenerate = true;
    c.exact = true;
    double r = fold_point(s, -1, 0).first;
    double y0 = std::isinf(r) ? 0.0 : r + 1;  // any y != r gives the same point
    MomentPoint a = moment_map(s, -1, r, y0), b = moment_map(s, -1, y0, r);
    c.points = {a.vec(), b.vec()};
    return c;
  }
  auto nf = normal_form(s);
  bool canonical = nf && (s.q == Quadratic(0, 0, 1) || s.q == Quadratic(0, 1, 0) || s.q == Quadratic(1, 0, 1));
  if (canonical) {
    c.exact = true;
    switch (*nf) {
      case ConicType::Hyperbolic:  // mu1 mu2 + 1/4
        c.Q(0, 1) = c.Q(1, 0) = 0.5;
        c.Q(2, 2) = 0.25;
        break;
      case ConicType::Elliptic:  // mu1^2 + mu2^2 - 1
        c.Q(0, 0) = c.Q(1, 1) = 1;
        c.Q(2, 2) = -1;
        break;
      case ConicType::Parabolic:  // mu1^2 - 4 mu2
        c.Q(0, 0) = 1;
        c.Q(1, 2) = c.Q(2, 1) = -2;
        break;
    }
    return c;
  }
  // general frame: least-squares conic through sampled fold images
  std::vector<Vector2d> pts;
  for (int k = 0; k < 64; ++k) {
    double t = std::tan(M_PI * ((k + 0.5) / 64 - 0.5) * 0.98);
    auto [x, y] = fold_point(s, sign, t);
    try {
      pts.push_back(moment_map(s, sign, x, y).vec());
    } catch (const std::domain_error&) {
    }
  }
  double scale = 0;
  for (auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  if (scale == 0) scale = 1;
  Eigen::MatrixXd D(pts.size(), 6);
  for (size_t i = 0; i < pts.size(); ++i) {
    double u = pts[i].x() / scale, v = pts[i].y() / scale;
    D.row(i) << u * u, u * v, v * v, u, v, 1;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
  Eigen::VectorXd w = svd.matrixV().col(5);
  // undo the scaling: u = mu/scale
  double s1 = 1 / scale, s2 = s1 * s1;
  c.Q << w(0) * s2, w(1) * s2 / 2, w(3) * s1 / 2, w(1) * s2 / 2, w(2) * s2, w(4) * s1 / 2, w(3) * s1 / 2,
      w(4) * s1 / 2, w(5);
  c.Q /= c.Q.cwiseAbs().maxCoeff();
  return c;
}

Quadratic edge_quadratic(const Quadratic& q, const Rational& g) {
  return Quadratic(q.c0 * g + q.c1, (q.c2 - q.c0 * g * g) / 2, -g * (q.c1 * g + q.c2));
}

Quadratic edge_quadratic_at_infinity(const Quadratic& q) { return Quadratic(0, q.c0 / 2, q.c1); }

Tangency tangency(const Conic& c, const LineInTstar& l) {
  Tangency t;
  if (c.degenerate) return t;
  t.applicable = true;
  Eigen::Matrix3d Q = c.Q / c.Q.cwiseAbs().maxCoeff();
  Vector2d n = l.normal / l.normal.norm();
  double off = l.offset / l.normal.norm();
  Vector2d m0 = off * n, d(-n.y(), n.x());
  Eigen::Matrix2d Q2 = Q.topLeftCorner<2, 2>();
  Vector2d lin = Q.topRightCorner<2, 1>();
  double a = d.dot(Q2 * d);
  double b = 2 * d.dot(Q2 * m0 + lin);
  double k = m0.dot(Q2 * m0) + 2 * lin.dot(m0) + Q(2, 2);
  double sc = std::max({1.0, b * b, std::abs(4 * a * k)});
  if (std::abs(a) < 1e-12) {
    // line parallel to an asymptote: tangent at infinity iff no finite crossing
    t.discriminant = std::abs(b) / std::sqrt(sc);
    t.certified = std::abs(b) < 1e-9;
  } else {
    t.discriminant = (b * b - 4 * a * k) / sc;
    t.certified = std::abs(t.discriminant) < 1e-10;
  }
  return t;
}

LevelLine level_set_line(const AnsatzSpec& s, int sign, Axis axis, const Endpoint& g) {
  LevelLine out;
  LineInTstar& L = out.line;
  const Quadratic& q = s.q;
  std::optional<std::array<Rational, 2>> exact;
  if (g.infinite) {
    exact = frame_coords(s.frame, edge_quadratic_at_infinity(q));
  } else if (g.is_rational()) {
    exact = frame_coords(s.frame, edge_quadratic(q, g.value.rational_value()));
  }
  if (exact) {
    L.normal = {to_double((*exact)[0]), to_double((*exact)[1])};
    if (L.normal.isZero()) throw std::domain_error("edge quadratic vanishes: the level set is a fold");
  } else {
    double gv = g.approx();
    auto ab = frame_coords_d(s.frame, q.c0d() * gv + q.c1d(), (q.c2d() - q.c0d() * gv * gv) / 2,
                             -gv * (q.c1d() * gv + q.c2d()));
    L.normal = {ab[0], ab[1]};
  }
  // offset: pair the normal with mu at a point of the level set
  const Arc& other = axis == Axis::X ? s.y_interval : s.x_interval;
  double gv = g.infinite ? INFINITY : g.approx();
  bool found = false;
  for (double sp : {0.5, 0.3, 0.7, 0.1, 0.9}) {
    double o = other.at(sp);
    try {
      MomentPoint m = axis == Axis::X ? moment_map(s, sign, gv, o) : moment_map(s, sign, o, gv);
      L.offset = L.normal.dot(m.vec());
      found = true;
      break;
    } catch (const std::domain_error&) {
    }
  }
  if (!found) throw std::domain_error("level set lies on a singular locus of the moment map");
  if (exact) {
    auto p = primitive_pair(*exact);
    double scale = L.normal.x() != 0 ? to_double(Rational(p[0])) / L.normal.x()
                                     : to_double(Rational(p[1])) / L.normal.y();
    L.normal = {to_double(Rational(p[0])), to_double(Rational(p[1]))};
    L.offset *= scale;
    L.integer_normal = p;
  }
  out.tangency = tangency(fold_conic(s, sign), L);
  return out;
}

LineInTstar p_image_line(const AnsatzSpec& s, int sign, const Quadratic& p) {
  if (p.is_zero()) throw std::invalid_argument("p = 0");
  if (p.c0 == 0 && p.c1 == 0) throw std::invalid_argument("p is a nonzero constant: its zero locus is empty");
  auto n = identify_t(s, p, sign);
  if (n[0] == 0 && n[1] == 0) throw std::invalid_argument("p is proportional to q under this identification");
  // <mu+, n> = -P/q with P = p + lam q the canonical preimage; lam = 0 unless q is null
  Rational offset = 0;
  if (sign > 0) {
    auto lam = proportional(bracket_preimage(s.q, bracket(p, s.q)) - p, s.q);
    if (!lam) throw std::logic_error("p_image_line: preimage differs from p by more than a multiple of q");
    offset = -*lam;
  }
  LineInTstar L;
  auto pr = primitive_pair(n);
  Rational k = Rational(pr[0]) != 0 ? Rational(pr[0]) / n[0] : Rational(pr[1]) / n[1];
  L.integer_normal = pr;
  L.normal = {to_double(Rational(pr[0])), to_double(Rational(pr[1]))};
  L.offset = to_double(k * offset);
  return L;
}

std::vector<CornerCheck> delzant_check(const Polygon& p, const Mat2Q& lattice) {
  Rational dl = lattice[0][0] * lattice[1][1] - lattice[0][1] * lattice[1][0];
  std::vector<CornerCheck> out;
  int n = static_cast<int>(p.normals.size());
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    const auto& a = p.normals[i];
    const auto& b = p.normals[j];
    CornerCheck c;
    c.edge_a = i;
    c.edge_b = j;
    c.det = (a[0] * b[1] - a[1] * b[0]) / dl;
    c.ok = c.det == 1 || c.det == -1;
    out.push_back(c);
  }
  return out;
}

bool polygon_consistent(const Polygon& p, double tol) {
  size_t n = p.vertices.size();
  if (n < 3 || p.normals.size() != n || p.offsets.size() != n) return false;
  double scale = 1;
  for (auto& v : p.vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  // strictly convex and simple: all turns of one sign, total turning 2 pi
  int orient = 0;
  double turning = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vector2d& a = p.vertices[i];
    const Vector2d& b = p.vertices[(i + 1) % n];
    const Vector2d& c = p.vertices[(i + 2) % n];
    double cr = cross(a, b, c);
    int sg = (cr > tol) - (cr < -tol);
    if (sg == 0) return false;
    if (orient == 0) orient = sg;
    if (sg != orient) return false;
    Vector2d u = b - a, v = c - b;
    turning += std::atan2(u.x() * v.y() - u.y() * v.x(), u.dot(v));
  }
  if (std::abs(std::abs(turning) - 2 * M_PI) > 1e-6) return false;
  for (size_t i = 0; i < n; ++i) {
    Vector2d nv(to_double(p.normals[i][0]), to_double(p.normals[i][1]));
    double t = tol * scale * nv.norm();
    if (std::abs(nv.dot(p.vertices[i]) - p.offsets[i]) > t) return false;
    if (std::abs(nv.dot(p.vertices[(i + 1) % n]) - p.offsets[i]) > t) return false;
    for (const auto& v : p.vertices)
      if (nv.dot(v) < p.offsets[i] - t) return false;
  }
  return true;
}

std::vector<Vector2d> convex_hull(std::vector<Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vector2d& a, const Vector2d& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vector2d> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

namespace {

// signed distance from a counterclockwise convex polygon's boundary (positive inside)
double inside_depth(const std::vector<Vector2d>& hull, const Vector2d& p) {
  double d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < hull.size(); ++i) {
    const Vector2d& a = hull[i];
    const Vector2d& b = hull[(i + 1) % hull.size()];
    d = std::min(d, cross(a, b, p) / (b - a).norm());
  }
  return d;
}

struct HullInfo {
  std::vector<Vector2d> hull;
  double area = 0, diameter = 0;
  Vector2d lo, hi;
};

HullInfo hull_info(const std::vector<Vector2d>& pts) {
  HullInfo h;
  h.hull = convex_hull(pts);
  h.lo = h.hi = pts[0];
  for (auto& p : pts) {
    h.lo = h.lo.cwiseMin(p);
    h.hi = h.hi.cwiseMax(p);
  }
  h.diameter = (h.hi - h.lo).norm();
  for (size_t i = 1; i + 1 < h.hull.size(); ++i) h.area += cross(h.hull[0], h.hull[i], h.hull[i + 1]) / 2;
  return h;
}

std::vector<Vector2d> finite_points(const std::vector<MomentPoint>& s) {
  std::vector<Vector2d> out;
  for (auto& m : s)
    if (std::isfinite(m.mu1) && std::isfinite(m.mu2)) out.push_back(m.vec());
  return out;
}

}  // namespace

ConvexityResult convexity_check(const std::vector<MomentPoint>& samples) {
  ConvexityResult r;
  std::vector<Vector2d> pts = finite_points(samples);
  if (pts.size() < 3) return r;
  HullInfo h = hull_info(pts);
  if (h.hull.size() < 3 || h.area <= 1e-9 * h.diameter * h.diameter) return r;  // collinear
  std::vector<double> nn(pts.size(), std::numeric_limits<double>::infinity());
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double d = (pts[i] - pts[j]).norm();
      if (d == 0) continue;
      nn[i] = std::min(nn[i], d);
      nn[j] = std::min(nn[j], d);
    }
  std::nth_element(nn.begin(), nn.begin() + nn.size() / 2, nn.end());
  r.spacing = nn[nn.size() / 2];
  double best = 4 * r.spacing;
  const int N = 120;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      Vector2d p = h.lo + Vector2d((h.hi - h.lo).x() * i / N, (h.hi - h.lo).y() * j / N);
      if (inside_depth(h.hull, p) <= 1e-9 * h.diameter) continue;
      double d = std::numeric_limits<double>::infinity();
      for (auto& s : pts) d = std::min(d, (s - p).squaredNorm());
      d = std::sqrt(d);
      if (d > best) {
        best = d;
        r.convex = false;
        r.witness = p;
      }
    }
  return r;
}

ConvexityResult convexity_check_mesh(const std::vector<MomentPoint>& grid, int n, int m) {
  ConvexityResult r;
  std::vector<Vector2d> pts = finite_points(grid);
  if (pts.size() < 3) return r;
  HullInfo h = hull_info(pts);
  if (h.hull.size() < 3 || h.area <= 1e-9 * h.diameter * h.diameter) return r;
  struct Tri {
    Vector2d a, b, c;
  };
  std::vector<Tri> tris;
  auto ok = [&](int i, int j) { return std::isfinite(grid[i * m + j].mu1) && std::isfinite(grid[i * m + j].mu2); };
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < m; ++j) {
      if (!ok(i, j) || !ok(i + 1, j) || !ok(i, j + 1) || !ok(i + 1, j + 1)) continue;
      Vector2d a = grid[i * m + j].vec(), b = grid[(i + 1) * m + j].vec(), c = grid[i * m + j + 1].vec(),
               d = grid[(i + 1) * m + j + 1].vec();
      tris.push_back({a, b, d});
      tris.push_back({a, d, c});
    }
  // bucket triangles by bounding box
  const int N = 160;
  Vector2d ext = (h.hi - h.lo).cwiseMax(Vector2d::Constant(1e-300));
  auto cell = [&](const Vector2d& p) {
    Vector2d u = (p - h.lo).cwiseQuotient(ext) * N;
    return std::pair<int, int>{std::clamp(int(u.x()), 0, N - 1), std::clamp(int(u.y()), 0, N - 1)};
  };
  std::vector<std::vector<int>> buckets(N * N);
  for (size_t t = 0; t < tris.size(); ++t) {
    Vector2d lo = tris[t].a.cwiseMin(tris[t].b).cwiseMin(tris[t].c);
    Vector2d hi = tris[t].a.cwiseMax(tris[t].b).cwiseMax(tris[t].c);
    auto [i0, j0] = cell(lo);
    auto [i1, j1] = cell(hi);
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j) buckets[i * N + j].push_back(static_cast<int>(t));
  }
  auto covered = [&](const Vector2d& p) {
    auto [i, j] = cell(p);
    for (int t : buckets[i * N + j]) {
      const Tri& T = tris[t];
      double d1 = cross(T.a, T.b, p), d2 = cross(T.b, T.c, p), d3 = cross(T.c, T.a, p);
      double e = 1e-12 * h.diameter * h.diameter;
      bool neg = d1 < -e || d2 < -e || d3 < -e, pos = d1 > e || d2 > e || d3 > e;
      if (!(neg && pos)) return true;
    }
    return false;
  };
  double margin = 1e-3 * h.diameter;
  double best = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Vector2d p = h.lo + Vector2d(ext.x() * (i + 0.5) / N, ext.y() * (j + 0.5) / N);
      double depth = inside_depth(h.hull, p);
      if (depth <= margin || covered(p)) continue;
      if (depth > best) {
        best = depth;
        r.convex = false;
        r.witness = p;
      }
    }
  return r;
}

}  // namespace ambitoric

#include "ambitoric/tensors.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ambitoric {

using Eigen::Matrix4d;

std::string to_string(Field f) {
  switch (f) {
    case Field::G0: return "G0";
    case Field::Gplus: return "G+";
    case Field::Gminus: return "G-";
    case Field::Gp: return "Gp";
    case Field::OmegaPlus: return "omega+";
    case Field::OmegaMinus: return "omega-";
    case Field::Jplus: return "J+";
    case Field::Jminus: return "J-";
  }
  return "?";
}

namespace {

void require_nonzero(double v, const char* what) {
  if (v == 0 || !std::isfinite(v)) throw std::domain_error(std::string("singular point: ") + what + " = 0");
}

Matrix4d g0_matrix(const AnsatzSpec& s, double x, double y) {
  double A = s.A(x), B = s.B(y), d = x - y, q = s.q.polar(x, y);
  require_nonzero(d, "x - y");
  require_nonzero(q, "q(x,y)");
  double ex[2] = {s.frame.e1(x), s.frame.e2(x)};
  double ey[2] = {s.frame.e1(y), s.frame.e2(y)};
  double w = 1 / (d * q * d * q);
  Matrix4d g = Matrix4d::Zero();
  g(0, 0) = 1 / A;
  g(1, 1) = 1 / B;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(2 + i, 2 + j) = (A * ey[i] * ey[j] + B * ex[i] * ex[j]) * w;
  return g;
}

double scale_of(const AnsatzSpec& s, const MetricChoice& g, double x, double y) {
  double d = x - y, q = s.q.polar(x, y);
  switch (g.tag) {
    case MetricChoice::Tag::G0: return 1;
    case MetricChoice::Tag::Gplus: return std::abs(d / q);
    case MetricChoice::Tag::Gminus: return std::abs(q / d);
    case MetricChoice::Tag::Gp: {
      double p = g.p.polar(x, y);
      require_nonzero(p, "p(x,y)");
      return std::abs(d * q / (p * p));
    }
  }
  return 1;
}

}  // namespace

Matrix4d metric_matrix(const AnsatzSpec& s, const MetricChoice& g, double x, double y) {
  Matrix4d m = g0_matrix(s, x, y);
  return scale_of(s, g, x, y) * m;
}

Matrix4d omega_matrix(const AnsatzSpec& s, int sign, double x, double y) {
  double den = sign > 0 ? s.q.polar(x, y) : x - y;
  require_nonzero(den, sign > 0 ? "q(x,y)" : "x - y");
  double ex[2] = {s.frame.e1(x), s.frame.e2(x)};
  double ey[2] = {s.frame.e1(y), s.frame.e2(y)};
  double w = 1 / (den * den);
  Matrix4d o = Matrix4d::Zero();
  for (int i = 0; i < 2; ++i) {
    o(0, 2 + i) = ey[i] * w;
    o(1, 2 + i) = (sign > 0 ? ex[i] : -ex[i]) * w;
  }
  return o - o.transpose().eval();
}

Matrix4d complex_structure(const AnsatzSpec& s, int sign, double x, double y) {
  Matrix4d G = metric_matrix(s, sign > 0 ? MetricChoice::gplus() : MetricChoice::gminus(), x, y);
  return -G.inverse() * omega_matrix(s, sign, x, y);
}

TensorBlock eval_field(const AnsatzSpec& s, Field f, const FramePoint& pt) {
  TensorBlock b;
  double x = pt.x, y = pt.y;
  switch (f) {
    case Field::G0: b.m = metric_matrix(s, MetricChoice::g0(), x, y); break;
    case Field::Gplus: b.m = metric_matrix(s, MetricChoice::gplus(), x, y); break;
    case Field::Gminus: b.m = metric_matrix(s, MetricChoice::gminus(), x, y); break;
    case Field::Gp:
      if (s.metric.tag != MetricChoice::Tag::Gp) throw std::invalid_argument("Gp requested but the spec has no Gp metric");
      b.m = metric_matrix(s, s.metric, x, y);
      break;
    case Field::OmegaPlus:
    case Field::OmegaMinus:
      b.kind = TensorBlock::Kind::TwoForm;
      b.m = omega_matrix(s, f == Field::OmegaPlus ? 1 : -1, x, y);
      break;
    case Field::Jplus:
    case Field::Jminus:
      b.kind = TensorBlock::Kind::Endomorphism;
      b.m = complex_structure(s, f == Field::Jplus ? 1 : -1, x, y);
      break;
  }
  return b;
}

double distance_to_singular(const AnsatzSpec& s, const MetricChoice& g, double x, double y) {
  double best = std::abs(x - y) / std::sqrt(2.0);
  auto add = [&](const Quadratic& p) {
    double v = p.polar(x, y);
    double gx = p.polar_dx(y), gy = p.polar_dx(x);
    double n = std::hypot(gx, gy);
    best = std::min(best, n > 0 ? std::abs(v) / n : (v == 0 ? 0.0 : INFINITY));
  };
  add(s.q);
  if (g.tag == MetricChoice::Tag::Gp) add(g.p);
  return best;
}

double CurvaturePack::symmetry_defect() const {
  double big = 0, bad = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double r = R(a, b, c, d);
          big = std::max(big, std::abs(r));
          bad = std::max({bad, std::abs(r + R(b, a, c, d)), std::abs(r + R(a, b, d, c)), std::abs(r - R(c, d, a, b))});
        }
  return big > 0 ? bad / big : bad;
}

namespace {

using MetricFn = std::function<Matrix4d(double, double)>;

struct Jet {
  Matrix4d g;
  Matrix4d dg[2];
  Matrix4d ddg[2][2];
};

Matrix4d at(const MetricFn& f, double x, double y) { return f(x, y); }

Jet metric_jet(const MetricFn& f, double x, double y, double h) {
  auto first = [&](int k, double e) -> Matrix4d {
    double dx = k == 0 ? e : 0, dy = k == 1 ? e : 0;
    return (at(f, x + dx, y + dy) - at(f, x - dx, y - dy)) / (2 * e);
  };
  auto second = [&](int k, int l, double e) -> Matrix4d {
    if (k == l) {
      double dx = k == 0 ? e : 0, dy = k == 1 ? e : 0;
      return (at(f, x + dx, y + dy) - 2 * at(f, x, y) + at(f, x - dx, y - dy)) / (e * e);
    }
    return (at(f, x + e, y + e) - at(f, x + e, y - e) - at(f, x - e, y + e) + at(f, x - e, y - e)) / (4 * e * e);
  };
  Jet j;
  j.g = at(f, x, y);
  for (int k = 0; k < 2; ++k) j.dg[k] = (4 * first(k, h / 2) - first(k, h)) / 3;
  for (int k = 0; k < 2; ++k)
    for (int l = k; l < 2; ++l) {
      j.ddg[k][l] = (4 * second(k, l, h / 2) - second(k, l, h)) / 3;
      j.ddg[l][k] = j.ddg[k][l];
    }
  return j;
}

CurvaturePack curvature_from_jet(const Jet& j) {
  Matrix4d gi = j.g.inverse();
  auto dg = [&](int k, int a, int b) { return k < 2 ? j.dg[k](a, b) : 0.0; };
  auto ddg = [&](int e, int k, int a, int b) { return k < 2 ? j.ddg[e][k](a, b) : 0.0; };
  // dgi[e] = -g^-1 (d_e g) g^-1
  Matrix4d dgi[2] = {-gi * j.dg[0] * gi, -gi * j.dg[1] * gi};

  double G[4][4][4] = {}, dG[2][4][4][4] = {};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double s = 0;
        double ds[2] = {0, 0};
        for (int d = 0; d < 4; ++d) {
          double t = dg(b, d, c) + dg(c, d, b) - dg(d, b, c);
          s += gi(a, d) * t;
          for (int e = 0; e < 2; ++e) {
            double dt = ddg(e, b, d, c) + ddg(e, c, d, b) - ddg(e, d, b, c);
            ds[e] += dgi[e](a, d) * t + gi(a, d) * dt;
          }
        }
        G[a][b][c] = s / 2;
        for (int e = 0; e < 2; ++e) dG[e][a][b][c] = ds[e] / 2;
      }
  auto dGam = [&](int e, int a, int b, int c) { return e < 2 ? dG[e][a][b][c] : 0.0; };

  double Rup[4][4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double r = dGam(c, a, d, b) - dGam(d, a, c, b);
          for (int e = 0; e < 4; ++e) r += G[a][c][e] * G[e][d][b] - G[a][d][e] * G[e][c][b];
          Rup[a][b][c][d] = r;
        }
  CurvaturePack out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double r = 0;
          for (int e = 0; e < 4; ++e) r += j.g(a, e) * Rup[e][b][c][d];
          out.riemann[((a * 4 + b) * 4 + c) * 4 + d] = r;
        }
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double r = 0;
      for (int a = 0; a < 4; ++a) r += Rup[a][b][a][d];
      out.ricci(b, d) = r;
    }
  out.scalar = (gi.cwiseProduct(out.ricci)).sum();
  return out;
}

void check_stencil(const AnsatzSpec& s, const MetricChoice& g, double x, double y, double h) {
  double r = 2 * h;
  for (double dx : {-r, 0.0, r})
    for (double dy : {-r, 0.0, r})
      if (!(s.A(x + dx) > 0) || !(s.B(y + dy) > 0))
        throw std::domain_error("curvature stencil leaves the region A > 0, B > 0");
  if (distance_to_singular(s, g, x, y) < 10 * h)
    throw std::domain_error("curvature stencil is within 10h of a singular locus");
}

}  // namespace

CurvaturePack curvature(const AnsatzSpec& s, const MetricChoice& g, const FramePoint& pt, double h) {
  check_stencil(s, g, pt.x, pt.y, h);
  MetricFn f = [&](double x, double y) { return metric_matrix(s, g, x, y); };
  CurvaturePack out = curvature_from_jet(metric_jet(f, pt.x, pt.y, h));
  out.step = h;
  return out;
}

double einstein_divergence(const AnsatzSpec& s, const MetricChoice& g, const FramePoint& pt, double h, double H) {
  check_stencil(s, g, pt.x, pt.y, H + h);
  auto einstein = [&](double x, double y) {
    CurvaturePack c = curvature(s, g, {x, y}, h);
    Matrix4d gm = metric_matrix(s, g, x, y);
    return Matrix4d(c.ricci - 0.5 * c.scalar * gm);
  };
  Matrix4d E = einstein(pt.x, pt.y);
  auto central = [&](double ex, double ey) -> Matrix4d {
    return (einstein(pt.x + ex, pt.y + ey) - einstein(pt.x - ex, pt.y - ey)) / (2 * (ex + ey));
  };
  Matrix4d dE[2] = {(4 * central(H / 2, 0) - central(H, 0)) / 3, (4 * central(0, H / 2) - central(0, H)) / 3};
  MetricFn f = [&](double x, double y) { return metric_matrix(s, g, x, y); };
  Jet j = metric_jet(f, pt.x, pt.y, h);
  Matrix4d gi = j.g.inverse();
  double Gam[4][4][4] = {};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double v = 0;
        for (int d = 0; d < 4; ++d) {
          double t = (b < 2 ? j.dg[b](d, c) : 0) + (c < 2 ? j.dg[c](d, b) : 0) - (d < 2 ? j.dg[d](b, c) : 0);
          v += gi(a, d) * t;
        }
        Gam[a][b][c] = v / 2;
      }
  double worst = 0;
  for (int b = 0; b < 4; ++b) {
    double div = 0;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) {
        double nab = c < 2 ? dE[c](a, b) : 0;
        for (int d = 0; d < 4; ++d) nab -= Gam[d][c][a] * E(d, b) + Gam[d][c][b] * E(a, d);
        div += gi(a, c) * nab;
      }
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

std::array<double, 4> d_omega(const AnsatzSpec& s, int sign, const FramePoint& pt, double h) {
  auto O = [&](double x, double y) { return omega_matrix(s, sign, x, y); };
  auto central = [&](double ex, double ey) -> Matrix4d {
    double e = ex + ey;
    return (O(pt.x + ex, pt.y + ey) - O(pt.x - ex, pt.y - ey)) / (2 * e);
  };
  Matrix4d dx = (4 * central(h / 2, 0) - central(h, 0)) / 3;
  Matrix4d dy = (4 * central(0, h / 2) - central(0, h)) / 3;
  auto d = [&](int k) -> const Matrix4d* { return k == 0 ? &dx : (k == 1 ? &dy : nullptr); };
  auto comp = [&](int a, int b, int c) {
    double v = 0;
    if (auto m = d(a)) v += (*m)(b, c);
    if (auto m = d(b)) v += (*m)(c, a);
    if (auto m = d(c)) v += (*m)(a, b);
    return v;
  };
  return {comp(0, 1, 2), comp(0, 1, 3), comp(0, 2, 3), comp(1, 2, 3)};
}

OmegaSquare omega_square(const AnsatzSpec& s, int sign, double x, double y) {
  Matrix4d O = omega_matrix(s, sign, x, y);
  Matrix4d J = complex_structure(s, sign, x, y);
  double pf = O(0, 1) * O(2, 3) - O(0, 2) * O(1, 3) + O(0, 3) * O(1, 2);
  Eigen::RowVector4d ex(1, 0, 0, 0), ey(0, 1, 0, 0);
  Matrix4d rows;
  rows.row(0) = ex;
  rows.row(1) = ex * J;
  rows.row(2) = ey;
  rows.row(3) = ey * J;
  double f = conformal_factor(s, x, y);
  OmegaSquare out;
  out.measured = pf / rows.determinant();
  out.predicted = (sign > 0 ? 1 / (f * f) : f * f) / (s.A(x) * s.B(y));
  return out;
}

}  // namespace ambitoric

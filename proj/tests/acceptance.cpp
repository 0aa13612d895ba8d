// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "ambitoric/boundary.hpp"
#include "ambitoric/io.hpp"
#include "ambitoric/special.hpp"
#include "ambitoric/tensors.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace ambitoric;
using Eigen::Matrix4d;
using Eigen::Vector2d;
namespace fs = std::filesystem;
using Kind = BoundaryComponent::Kind;

namespace {

const Quadratic kPar(0, 0, 1), kHyp(0, 1, 0), kEll(1, 0, 1);

Endpoint fin(long long a, long long b = 1) { return Endpoint::finite(Rational(a, b)); }

AnsatzSpec make(const Quadratic& q, Poly A, Poly B, Arc X, Arc Y) {
  AnsatzSpec s;
  s.q = q;
  s.frame = *default_frame(q);
  s.A = std::move(A);
  s.B = std::move(B);
  s.x_interval = X;
  s.y_interval = Y;
  return s;
}

AnsatzSpec normal_spec(const Quadratic& q) {
  return make(q, Poly::from_ints({3, 1, 2, 0, 1}), Poly::from_ints({2, -1, 1}), {fin(-4), fin(4)}, {fin(-4), fin(4)});
}

FramePoint random_point(const AnsatzSpec& s, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-3, 3);
  while (true) {
    double x = u(rng), y = u(rng);
    if (std::abs(x - y) > 0.2 && std::abs(s.q.polar(x, y)) > 0.2) return {x, y, u(rng), u(rng)};
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string num(double v) { return fmt(v, 3); }

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << o.detail << ")"
            << std::endl;
}

Outcome kerr_ricci_flat() {
  auto t0 = std::chrono::steady_clock::now();
  AnsatzSpec s = kerr({1, Rational(1, 2)}, KerrRegion::Exterior);
  double worst = 0;
  // x beyond the outer root 1 + sqrt(5)/2, |y| < 1/2
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      auto c = curvature(s, s.metric, {2.6 + 0.8 * i, -0.4 + 0.2 * j, 0, 0});
      worst = std::max(worst, c.ricci.cwiseAbs().maxCoeff());
    }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst < 1e-4 && secs < 10, "max |Ric| " + num(worst) + ", " + num(secs) + " s"};
}

Outcome fold_conics() {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  double worst = 0;
  int n = 0;
  auto track = [&](double r) {
    worst = std::max(worst, std::abs(r));
    ++n;
  };
  AnsatzSpec h = normal_spec(kHyp), e = normal_spec(kEll), p = normal_spec(kPar);
  for (int k = 0; k < 50; ++k) {
    for (int sg : {1, -1}) {
      auto [x, y] = fold_point(h, sg, u(rng));
      MomentPoint m = moment_map(h, sg, x, y);
      track(m.mu1 * m.mu2 + 0.25);
      std::tie(x, y) = fold_point(e, sg, u(rng));
      m = moment_map(e, sg, x, y);
      track(m.mu1 * m.mu1 + m.mu2 * m.mu2 - 1);
    }
    auto [x, y] = fold_point(p, 1, u(rng));
    MomentPoint m = moment_map(p, 1, x, y);
    track(m.mu1 * m.mu1 - 4 * m.mu2);
    // the negative fold of q = 1 lies at x = inf or y = inf
    double t = u(rng);
    MomentPoint a = moment_map(p, -1, INFINITY, t), b = moment_map(p, -1, t, INFINITY);
    track(std::hypot(a.mu1, std::abs(a.mu2) - 0.5));
    track(std::hypot(b.mu1, std::abs(b.mu2) - 0.5));
    track(a.mu2 + b.mu2);
  }
  return {worst < 1e-10, std::to_string(n) + " residuals, max " + num(worst)};
}

Outcome kahler_identities() {
  std::mt19937 rng(17);
  Matrix4d I = Matrix4d::Identity();
  double alg = 0, domega = 0, square = 0;
  for (auto q : {kPar, kHyp, kEll}) {
    AnsatzSpec s = normal_spec(q);
    for (int n = 0; n < 100; ++n) {
      FramePoint pt = random_point(s, rng);
      Matrix4d Jp = eval_field(s, Field::Jplus, pt).m, Jm = eval_field(s, Field::Jminus, pt).m;
      for (int sg : {1, -1}) {
        Matrix4d J = sg > 0 ? Jp : Jm;
        Matrix4d G = eval_field(s, sg > 0 ? Field::Gplus : Field::Gminus, pt).m;
        Matrix4d O = eval_field(s, sg > 0 ? Field::OmegaPlus : Field::OmegaMinus, pt).m;
        double sc = G.cwiseAbs().maxCoeff();
        alg = std::max(alg, (J * J + I).cwiseAbs().maxCoeff());
        alg = std::max(alg, (J.transpose() * G * J - G).cwiseAbs().maxCoeff() / sc);
        alg = std::max(alg, (J.transpose() * G - O).cwiseAbs().maxCoeff() / sc);
        for (double v : d_omega(s, sg, pt)) domega = std::max(domega, std::abs(v));
        OmegaSquare w = omega_square(s, sg, pt.x, pt.y);
        square = std::max(square, std::abs(w.measured / w.predicted - 1));
      }
      alg = std::max(alg, (Jp * Jm - Jm * Jp).cwiseAbs().maxCoeff());
    }
  }
  return {alg < 1e-10 && domega < 1e-6 && square < 1e-8,
          "algebraic " + num(alg) + ", d omega " + num(domega) + ", omega^2 rel " + num(square)};
}

Outcome gauge_transport() {
  // x -> -1/x sends A = x^4 + 1 to itself
  Poly A = Poly::from_ints({1, 0, 0, 0, 1});
  bool exact = transport_quartic(A, Mobius::inversion()) == A;

  std::mt19937 rng(23);
  std::uniform_int_distribution<int> e(-4, 4);
  std::uniform_real_distribution<double> u(-3, 3);
  double worst = 0;
  int elements = 0, points = 0;
  while (elements < 10) {
    Mobius m(e(rng), e(rng), e(rng), e(rng));
    if (m.det() == 0) continue;
    ++elements;
    for (auto q : {kPar, kHyp, kEll}) {
      AnsatzSpec s = normal_spec(q), t = s;
      t.q = transport_quadratic(s.q, m);
      t.frame = {transport_quadratic(s.frame.e1, m), transport_quadratic(s.frame.e2, m)};
      t.A = transport_quartic(s.A, m);
      t.B = transport_quartic(s.B, m);
      for (int k = 0; k < 5; ++k) {
        FramePoint pt = random_point(s, rng);
        double px = m.pole().infinite ? INFINITY : m.pole().approx();
        if (std::abs(pt.x - px) < 0.2 || std::abs(pt.y - px) < 0.2) continue;
        FramePoint tp{m.apply(pt.x), m.apply(pt.y), pt.t1, pt.t2};
        Matrix4d D = Matrix4d::Identity();
        D(0, 0) = m.derivative(pt.x);
        D(1, 1) = m.derivative(pt.y);
        for (Field f : {Field::G0, Field::OmegaPlus, Field::OmegaMinus}) {
          Matrix4d here = eval_field(s, f, pt).m, there = D.transpose() * eval_field(t, f, tp).m * D;
          worst = std::max(worst, (here - there).cwiseAbs().maxCoeff() / std::max(1.0, here.cwiseAbs().maxCoeff()));
        }
        ++points;
      }
    }
  }
  return {exact && worst < 1e-8, std::string("x^4 + 1 ") + (exact ? "fixed" : "moved") + ", " +
                                     std::to_string(points) + " points, max deviation " + num(worst)};
}

Outcome boundary_statuses() {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> numer(-6, 6), den(1, 4), mult(1, 2);
  int agree = 0;
  bool rule = true;
  for (int t = 0; t < 10; ++t) {
    Rational g(numer(rng), den(rng));
    int m = t < 2 ? t + 1 : mult(rng);
    Poly lin({-g, Rational(1)});
    Poly A = pow(lin, m) * Poly({-g - 2, Rational(1)}) * Poly::from_ints({1, 0, 1});
    if (A(g + Rational(1, 2)) < 0) A = -A;
    AnsatzSpec s = make(kHyp, A, Poly::from_ints({1}), {Endpoint::finite(g), Endpoint::finite(g + 2)},
                        {fin(-20), fin(-19)});
    BoundaryComponent edge;
    edge.axis = Axis::X;
    edge.gamma = s.x_interval.lo;
    auto st = edge_status(s, MetricChoice::g0(), edge);
    auto want = m == 1 ? DistanceStatus::Verdict::Finite : DistanceStatus::Verdict::InfinitelyDistant;
    rule = rule && st.verdict == want;
    if (edge_integral_probe(A, g, +1, 1.0).convergent == (m == 1)) ++agree;
  }

  // fitted exponents on folds, and r = 1 on a P-locus
  std::set<double> seen;
  double worst = 0;
  std::uniform_int_distribution<int> c(1, 5);
  for (int t = 0; t < 10; ++t) {
    bool ell = t % 2;
    AnsatzSpec s = make(ell ? kEll : kHyp, Poly::from_ints({c(rng), 0, c(rng)}),
                        Poly::from_ints({c(rng), c(rng) - 3, 5}), {fin(-c(rng)), fin(c(rng))},
                        {fin(-c(rng)), fin(c(rng))});
    std::vector<MetricChoice> gs{MetricChoice::g0(), MetricChoice::gplus(), MetricChoice::gminus(),
                                 MetricChoice::gp(ell ? Quadratic(1, 0, -1) : Quadratic(1, 0, 4))};
    for (const auto& comp : validate(s, 24))
      for (const auto& b : decompose_boundary(s, comp)) {
        if (b.kind != Kind::Fold) continue;
        for (const auto& g : gs) {
          s.metric = g;
          auto st = fold_status(s, g, b);
          if (!st.r_numeric || !st.r_exponent) return {false, "no fitted exponent"};
          worst = std::max(worst, std::abs(*st.r_numeric - *st.r_exponent));
          seen.insert(*st.r_exponent);
        }
      }
  }
  AnsatzSpec pl = make(kHyp, Poly::from_ints({-8, 6, -1}), Poly::from_ints({9, 0, -4}), {fin(2), fin(4)},
                       {fin(-3, 2), fin(3, 2)});
  pl.metric = MetricChoice::gp(Quadratic(1, 0, -1));
  for (const auto& b : decompose_boundary(pl, validate(pl).at(0))) {
    if (b.kind != Kind::PLocus) continue;
    auto st = fold_status(pl, pl.metric, b);
    if (!st.r_numeric || !st.r_exponent) return {false, "no fitted exponent on the P-locus"};
    worst = std::max(worst, std::abs(*st.r_numeric - *st.r_exponent));
    seen.insert(*st.r_exponent);
  }
  bool covered = seen.count(0) && seen.count(0.5) && seen.count(-0.5) && seen.count(1);
  std::string vals;
  for (double v : seen) vals += (vals.empty() ? "" : " ") + fmt(v);
  return {rule && agree == 10 && covered && worst < 0.05,
          "exact rule " + std::string(rule ? "ok" : "wrong") + ", quadrature agrees " + std::to_string(agree) +
              "/10, exponents {" + vals + "}, max fit error " + num(worst)};
}

Outcome golden_verdicts() {
  fs::path data(AMBITORIC_DATA_DIR), golden = data.parent_path() / "tests" / "golden";
  int n = 0, match = 0;
  std::string bad;
  for (const auto& e : fs::directory_iterator(golden)) {
    std::string name = e.path().stem().string();
    AnsatzSpec s = load_spec((data / "specs" / (name + ".json")).string());
    Json full = verdicts_to_json(s, classify_spec(s), complete_orbifold_check(s));
    ++n;
    if (verdict_summary(full) == Json::parse(slurp(e.path())))
      ++match;
    else
      bad += " " + name;
  }
  return {n == 8 && match == 8, std::to_string(match) + "/" + std::to_string(n) + " match" + bad};
}

Outcome moment_linearity() {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> co(-3, 3);
  double pairing = 0, collinear = 0, angle = 0;
  int lines = 0, certified = 0, tangencies = 0;
  for (auto q : {kHyp, kEll, kPar}) {
    AnsatzSpec s = normal_spec(q);
    for (int trial = 0; trial < 4; ++trial) {
      // random p orthogonal to q: the orthogonal complement is spanned by the frame
      Quadratic p = Rational(co(rng)) * s.frame.e1 + Rational(co(rng)) * s.frame.e2;
      if (p.c0 == 0 && p.c1 == 0) continue;
      for (int sg : {1, -1}) {
        if (sg > 0 && conic_type(q) == ConicType::Parabolic && proportional(p, q)) continue;
        LineInTstar L = p_image_line(s, sg, p);
        auto id = identify_t(s, p, sg);
        Vector2d idn(id[0].convert_to<double>(), id[1].convert_to<double>());
        angle = std::max(angle, 1 - std::abs(idn.normalized().dot(L.normal.normalized())));
        std::vector<Vector2d> img;
        for (int k = 0; k < 30; ++k) {
          double x = u(rng), den = p.polar_dx(x);
          if (std::abs(den) < 1e-3) continue;
          double y = -(p.c1d() * x + p.c2d()) / den;
          if (std::abs(x - y) < 0.05 || std::abs(q.polar(x, y)) < 0.05) continue;
          Vector2d m = moment_map(s, sg, x, y).vec();
          img.push_back(m);
          pairing = std::max(pairing, std::abs(m.dot(L.normal) - L.offset) / std::max(1.0, m.norm() * L.normal.norm()));
        }
        if (img.size() < 3) continue;
        ++lines;
        // residual of each sample off the line through the first two, along identify_t(p)
        Vector2d dir = (img[1] - img[0]).normalized();
        double big = 1;
        for (auto& m : img) big = std::max(big, m.norm());
        for (auto& m : img) collinear = std::max(collinear, std::abs((m - img[0]).dot(idn.normalized())) / big);
        angle = std::max(angle, std::abs(dir.dot(idn.normalized())));
      }
    }
    for (int sg : {1, -1})
      for (auto axis : {Axis::X, Axis::Y})
        for (Endpoint g : {fin(5, 2), fin(-1, 3)}) {
          LevelLine l = level_set_line(s, sg, axis, g);
          if (!l.tangency.applicable) continue;
          ++tangencies;
          if (l.tangency.certified) ++certified;
        }
  }
  return {lines >= 10 && pairing < 1e-9 && collinear < 1e-9 && angle < 1e-9 && certified == tangencies,
          std::to_string(lines) + " lines, pairing " + num(pairing) + ", off-line " + num(collinear) +
              ", normal misfit " + num(angle) + ", tangency certified " + std::to_string(certified) + "/" +
              std::to_string(tangencies)};
}

#ifdef AMBITORIC_CLI
std::string run_cli(const std::string& args) {
  fs::path out = fs::temp_directory_path() / ("ambitoric_accept_" + std::to_string(::getpid()));
  std::string cmd = std::string(AMBITORIC_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  int st = std::system(cmd.c_str());
  if (!WIFEXITED(st) || WEXITSTATUS(st) != 0) throw std::runtime_error("cli failed: " + args);
  std::string text = slurp(out);
  fs::remove(out);
  return text;
}
#endif

Outcome polygons() {
  std::vector<StandardPolygon> ps{standard_polygon_cp2()};
  for (int k = 1; k <= 5; ++k) ps.push_back(standard_polygon_hirzebruch(k));
  bool ok = true;
  for (const auto& p : ps) {
    ok = ok && p.relation_holds && polygon_consistent(p.polygon);
    for (const auto& c : delzant_check(p.polygon, p.lattice)) ok = ok && c.ok && abs(c.det) == 1;
  }
  // the normal-sum relation, checked here directly from the normals
  for (int k = 1; k <= 5; ++k) {
    const auto& n = ps[k].polygon.normals;
    std::array<Rational, 2> sum{0, 0};
    for (const auto& v : n)
      if (v != std::array<Rational, 2>{1, -1}) sum = {sum[0] + v[0], sum[1] + v[1]};
    // (1,0) + (-k-1,k) + (-1,1) = k (-1,1) + (-1,1)
    ok = ok && sum[0] == -k - 1 && sum[1] == k + 1;
  }
  bool stable = true;
  std::string how = "in process";
  SvgLayer layer;
  layer.points = ps[2].polygon.vertices;
  layer.closed = true;
  stable = render_svg({layer}) == render_svg({layer});
#ifdef AMBITORIC_CLI
  how = "across CLI runs";
  for (std::string a : {"examples cp2 --format svg", "examples hirzebruch:3 --format svg",
                        "examples hirzebruch:2 --format csv", "moment --format csv " AMBITORIC_DATA_DIR "/specs/kerr_exterior.json"})
    stable = stable && run_cli(a) == run_cli(a);
#endif
  return {ok && stable, std::to_string(ps.size()) + " polygons " + (ok ? "Delzant" : "NOT Delzant") + ", output " +
                            (stable ? "byte-stable " : "unstable ") + how};
}

Outcome scalar_calibration() {
  AnsatzSpec s = make(kHyp, Poly::from_ints({1, 2, 0, 1}), Poly::from_ints({4, 1, -1}), {fin(2), fin(4)},
                      {fin(1, 4), fin(3, 2)});
  std::vector<double> ratio;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) {
      double x = 2.3 + 0.45 * i, y = 0.45 + 0.4 * j;
      ratio.push_back(curvature(s, MetricChoice::gminus(), {x, y, 0, 0}).scalar / scalar_closed_form(s, -1, x, y));
    }
  double spread = 0;
  for (double r : ratio) spread = std::max(spread, std::abs(r / ratio[0] - 1));
  return {ratio.size() >= 10 && spread < 1e-3, std::to_string(ratio.size()) + " points, constant " +
                                                   fmt(ratio[0], 6) + ", relative spread " + num(spread)};
}

Outcome convexity() {
  AnsatzSpec in = kerr({1, Rational(1, 2)}, KerrRegion::Interior);
  std::optional<ConvexityResult> folded;
  double at = 0;
  for (const auto& c : validate(in)) {
    for (const auto& b : decompose_boundary(in, c)) {
      if (b.kind != Kind::Fold || b.fold_sign != 1) continue;
      // a parameter mesh on the component's side of x = y around one fold point
      at = b.sample_x;
      const int n = 30;
      const double d = 0.015;  // stays inside A > 0, B > 0
      std::vector<MomentPoint> grid;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double along = d * (2.0 * i / (n - 1) - 1), across = c.sign_xy * d * (j + 1) / n;
          grid.push_back(moment_map(in, 1, at + along + across, at + along - across));
        }
      folded = convexity_check_mesh(grid, n, n);
      break;
    }
    if (folded) break;
  }
  if (!folded) return {false, "no component next to the positive fold"};
  AnsatzSpec ext = kerr({1, Rational(1, 2)}, KerrRegion::Exterior);
  auto comps = validate(ext);
  bool boxed = comps.size() == 1 && comps[0].box_type;
  std::vector<MomentPoint> pts;
  for (const auto& m : sample_component(ext, comps[0], 1, 40)) pts.push_back({m.mu1, m.mu2});
  ConvexityResult box = convexity_check(pts);
  std::string w = folded->witness ? "(" + num(folded->witness->x()) + ", " + num(folded->witness->y()) + ")" : "none";
  return {!folded->convex && folded->witness && boxed && box.convex,
          "near fold point x = y = " + num(at) + ": " + (folded->convex ? "convex" : "non-convex") + ", witness " + w +
              "; box-type " + (box.convex ? "convex" : "non-convex")};
}

}  // namespace

int main() {
  criterion(1, "Kerr is Ricci flat on the exterior", kerr_ricci_flat);
  criterion(2, "fold points satisfy the conic equations", fold_conics);
  criterion(3, "Kahler identities at random points", kahler_identities);
  criterion(4, "gauge transport", gauge_transport);
  criterion(5, "boundary distance statuses and exponents", boundary_statuses);
  criterion(6, "golden classification verdicts", golden_verdicts);
  criterion(7, "moment map linearity and tangency", moment_linearity);
  criterion(8, "standard polygons and stable output", polygons);
  criterion(9, "scalar curvature calibration", scalar_calibration);
  criterion(10, "non-convexity witness near the fold", convexity);
  return failures ? 1 : 0;
}

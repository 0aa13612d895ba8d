#include "ambitoric/tensors.hpp"
#include "doctest.h"

#include <cmath>
#include <random>

using namespace ambitoric;
using Eigen::Matrix4d;

namespace {

AnsatzSpec normal_spec(const Quadratic& q) {
  AnsatzSpec s;
  s.q = q;
  s.frame = *default_frame(q);
  s.A = Poly::from_ints({3, 1, 2, 0, 1});  // positive everywhere
  s.B = Poly::from_ints({2, -1, 1});
  s.x_interval = {Endpoint::finite(Rational(-4)), Endpoint::finite(Rational(4))};
  s.y_interval = s.x_interval;
  return s;
}

AnsatzSpec kerr_half() {
  // M = 1, alpha = 1/2
  AnsatzSpec s = normal_spec(Quadratic(0, 1, 0));
  s.A = Poly(std::vector<Rational>{Rational(-1, 4), -2, 1});
  s.B = Poly(std::vector<Rational>{Rational(1, 4), 0, -1});
  s.metric = MetricChoice::gp(Quadratic(0, 0, 1));
  return s;
}

// random point away from x = y and q = 0
FramePoint sample(const AnsatzSpec& s, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-3, 3);
  while (true) {
    double x = u(rng), y = u(rng);
    if (std::abs(x - y) > 0.2 && std::abs(s.q.polar(x, y)) > 0.2) return {x, y, u(rng), u(rng)};
  }
}

}  // namespace

TEST_CASE("displayed components in the normal forms") {
  AnsatzSpec h = normal_spec(Quadratic(0, 1, 0));
  FramePoint p{2.0, 0.5};
  Matrix4d g = eval_field(h, Field::G0, p).m;
  CHECK(g(0, 0) == doctest::Approx(1 / h.A(2.0)));
  CHECK(g(1, 1) == doctest::Approx(1 / h.B(0.5)));
  Matrix4d o = eval_field(h, Field::OmegaPlus, p).m;
  CHECK(o(0, 2) == doctest::Approx(1 / 6.25));              // 1/(x+y)^2
  CHECK(o(0, 3) == doctest::Approx(0.25 / 6.25));           // y^2/(x+y)^2
  CHECK(o(1, 3) == doctest::Approx(4 / 6.25));              // x^2/(x+y)^2
  Matrix4d om = eval_field(h, Field::OmegaMinus, p).m;
  CHECK(om(1, 2) == doctest::Approx(-1 / 2.25));
  // parabolic: g0 torus block (A + B) dt1^2 ... with q = 1
  AnsatzSpec par = normal_spec(Quadratic(0, 0, 1));
  Matrix4d gp = eval_field(par, Field::G0, p).m;
  double A = par.A(2.0), B = par.B(0.5);
  CHECK(gp(2, 2) == doctest::Approx((A + B) / 2.25));
  CHECK(gp(2, 3) == doctest::Approx((A * 0.5 + B * 2) / 2.25));
  CHECK_THROWS_AS(eval_field(h, Field::G0, {1.0, -1.0}), std::domain_error);
  CHECK_THROWS_AS(eval_field(h, Field::OmegaMinus, {1.0, 1.0}), std::domain_error);
  CHECK_NOTHROW(eval_field(h, Field::OmegaPlus, {1.0, 1.0}));
  CHECK_THROWS_AS(eval_field(h, Field::Gp, p), std::invalid_argument);
}

TEST_CASE("kahler identities at random points") {
  std::mt19937 rng(17);
  Matrix4d I = Matrix4d::Identity();
  for (auto q : {Quadratic(0, 0, 1), Quadratic(0, 1, 0), Quadratic(1, 0, 1)}) {
    AnsatzSpec s = normal_spec(q);
    for (int n = 0; n < 30; ++n) {
      FramePoint pt = sample(s, rng);
      Matrix4d Jp = eval_field(s, Field::Jplus, pt).m, Jm = eval_field(s, Field::Jminus, pt).m;
      for (int sg : {1, -1}) {
        Matrix4d J = sg > 0 ? Jp : Jm;
        Matrix4d G = eval_field(s, sg > 0 ? Field::Gplus : Field::Gminus, pt).m;
        Matrix4d O = eval_field(s, sg > 0 ? Field::OmegaPlus : Field::OmegaMinus, pt).m;
        double sc = G.cwiseAbs().maxCoeff();
        CHECK((J * J + I).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((J.transpose() * G * J - G).cwiseAbs().maxCoeff() < 1e-10 * sc);
        CHECK((J.transpose() * G - O).cwiseAbs().maxCoeff() < 1e-10 * sc);
        CHECK((O + O.transpose()).cwiseAbs().maxCoeff() == 0);
        CHECK(G.llt().info() == Eigen::Success);
      }
      CHECK((Jp * Jm - Jm * Jp).cwiseAbs().maxCoeff() < 1e-10);
      Matrix4d inv = -Jp * Jm;
      CHECK((inv * inv - I).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("omega is closed and its square vanishes on the fold") {
  std::mt19937 rng(5);
  for (auto q : {Quadratic(0, 0, 1), Quadratic(0, 1, 0), Quadratic(1, 0, 1)}) {
    AnsatzSpec s = normal_spec(q);
    for (int n = 0; n < 10; ++n) {
      FramePoint pt = sample(s, rng);
      for (int sg : {1, -1}) {
        for (double v : d_omega(s, sg, pt)) CHECK(std::abs(v) < 1e-6);
        auto w = omega_square(s, sg, pt.x, pt.y);
        CHECK(std::abs(w.measured / w.predicted - 1) < 1e-8);
      }
    }
  }
  // hyperbolic: omega_+^2 dies on x = y, omega_-^2 on x + y = 0
  AnsatzSpec h = normal_spec(Quadratic(0, 1, 0));
  for (int sg : {1, -1}) {
    double prev = INFINITY;
    for (int k = 1; k <= 20; ++k) {
      double e = std::pow(0.5, k);
      double x = sg > 0 ? 1.0 + e : -1.0 + e;
      double c = std::abs(omega_square(h, sg, x, 1.0).measured);
      CHECK(c < prev);
      prev = c;
    }
    CHECK(prev < 1e-10);
  }
}

TEST_CASE("kerr metric is ricci flat") {
  AnsatzSpec s = kerr_half();
  double worst = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      FramePoint pt{2.6 + 0.8 * i, -0.4 + 0.2 * j};
      CurvaturePack c = curvature(s, s.metric, pt);
      worst = std::max(worst, c.ricci.cwiseAbs().maxCoeff());
      CHECK(c.symmetry_defect() < 1e-5);
    }
  CHECK(worst < 1e-4);
}

TEST_CASE("diagonal ricci for gp metrics") {
  AnsatzSpec s = normal_spec(Quadratic(1, 0, 1));
  s.metric = MetricChoice::gp(Quadratic(1, 0, -1));  // z^2 - 1, orthogonal to 1 + z^2
  std::mt19937 rng(2);
  int done = 0;
  while (done < 5) {
    FramePoint pt = sample(s, rng);
    if (distance_to_singular(s, s.metric, pt.x, pt.y) < 0.2) continue;
    ++done;
    CurvaturePack c = curvature(s, s.metric, pt);
    Matrix4d J = complex_structure(s, 1, pt.x, pt.y);
    Matrix4d rj = J.transpose() * c.ricci * J;
    CHECK((rj - c.ricci).cwiseAbs().maxCoeff() < 1e-4 * std::max(1.0, c.ricci.cwiseAbs().maxCoeff()));
    CHECK((c.ricci - c.ricci.transpose()).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("contracted bianchi identity") {
  AnsatzSpec s = normal_spec(Quadratic(0, 1, 0));
  for (auto pt : {FramePoint{2.0, 0.5}, FramePoint{-1.5, 0.7}, FramePoint{2.5, -1.0}}) {
    CHECK(einstein_divergence(s, MetricChoice::g0(), pt) < 1e-3);
  }
}

TEST_CASE("curvature refuses unsafe stencils") {
  AnsatzSpec s = kerr_half();
  CHECK_THROWS_AS(curvature(s, s.metric, {1.0, 0.9995}), std::domain_error);
  CHECK_THROWS_AS(curvature(s, s.metric, {2.0, 0.0}), std::domain_error);  // A(2) < 0
}

#include "ambitoric/classify.hpp"
#include "doctest.h"

#include <algorithm>
#include <random>

using namespace ambitoric;

namespace {

const Quadratic kPar(0, 0, 1), kHyp(0, 1, 0), kEll(1, 0, 1);

Endpoint fin(long long a, long long b = 1) { return Endpoint::finite(Rational(a, b)); }

AnsatzSpec make(const Quadratic& q, Poly A, Poly B, Arc X, Arc Y, MetricChoice g = MetricChoice::g0()) {
  AnsatzSpec s;
  s.q = q;
  s.frame = *default_frame(q);
  s.A = std::move(A);
  s.B = std::move(B);
  s.x_interval = X;
  s.y_interval = Y;
  s.metric = g;
  return s;
}

bool fired(const Verdict& v, const std::string& rule) {
  auto r = v.violated_rules();
  return std::find(r.begin(), r.end(), rule) != r.end();
}

// four simple-root edges, normals (2,-2), (-8,2), (-18,2), (32,-2)
AnsatzSpec simple_box() {
  return make(kHyp, Poly::from_ints({-2, 3, -1}), Poly::from_ints({-12, 7, -1}), {fin(1), fin(2)}, {fin(3), fin(4)});
}

}  // namespace

TEST_CASE("proper folds violate the first rule") {
  AnsatzSpec s = make(kHyp, Poly::from_ints({-3, 4, -1}), Poly::from_ints({-8, 6, -1}), {fin(1), fin(3)},
                      {fin(2), fin(4)});
  auto vs = classify_spec(s, 24);
  CHECK(vs.size() >= 2);
  for (const auto& v : vs) {
    CHECK_FALSE(v.completable);
    CHECK_FALSE(v.extends_ambitoric);
    CHECK(fired(v, "i"));
    for (const auto& r : v.reports)
      if (r.component.kind == BoundaryComponent::Kind::Fold) CHECK_FALSE(r.status->infinitely_distant());
  }
}

TEST_CASE("simple-root box with normals in the lattice") {
  AnsatzSpec s = simple_box();
  auto vs = classify_spec(s);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].completable);
  CHECK(vs[0].extends_ambitoric);  // no folds at all
  CHECK(complete_orbifold_check(s).accept);

  // the lattice spanned by the computed normals: 2Z x 2Z contains all four
  s.lattice = {{{Rational(2), Rational(0)}, {Rational(0), Rational(2)}}};
  CHECK(classify_spec(s)[0].completable);
  // (2,-2) leaves 4Z x Z
  s.lattice = {{{Rational(4), Rational(0)}, {Rational(0), Rational(1)}}};
  auto v = classify_spec(s)[0];
  CHECK_FALSE(v.completable);
  CHECK(v.violated_rules() == std::vector<std::string>{"ii"});
  CHECK_FALSE(complete_orbifold_check(s).accept);
}

TEST_CASE("finite fold-edge needs G- or Gp") {
  AnsatzSpec s = make(kPar, Poly::from_ints({0, 1, 0, 1}), Poly::from_ints({-2, -3, -1}), {fin(0), Endpoint::inf()},
                      {fin(-2), fin(-1)});
  auto v = classify_spec(s)[0];
  CHECK_FALSE(v.completable);
  CHECK(fired(v, "iii"));
  // corners on the fold-edge are fold corners as well
  CHECK(fired(v, "iv"));

  s.metric = MetricChoice::gminus();
  v = classify_spec(s)[0];
  CHECK_FALSE(fired(v, "iii"));
  CHECK_FALSE(fired(v, "iv"));
  // normals (0,-2), (4,2), (-2,-2) lie in Z^2
  CHECK(v.completable);
  CHECK_FALSE(v.extends_ambitoric);  // the fold-edge is at finite distance

  // the corollary does not see the third rule, only the fold corners
  auto oc = complete_orbifold_check(make(kPar, s.A, s.B, s.x_interval, s.y_interval));
  CHECK_FALSE(oc.accept);
  bool flagged = false;
  for (const auto& d : oc.diagnostics) flagged = flagged || d.find("fold-edge") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("corner on q = 0") {
  AnsatzSpec s = make(kHyp, Poly::from_ints({-2, 3, -1}), Poly::from_ints({0, -1, -1}), {fin(1), fin(2)},
                      {fin(-1), fin(0)});
  auto v = classify_spec(s)[0];
  CHECK_FALSE(v.completable);
  CHECK(v.violated_rules() == std::vector<std::string>{"iv"});
  s.metric = MetricChoice::gminus();
  CHECK(classify_spec(s)[0].completable);
  CHECK_FALSE(classify_spec(s)[0].extends_ambitoric);
  auto oc = complete_orbifold_check(make(kHyp, s.A, s.B, s.x_interval, s.y_interval));
  CHECK_FALSE(oc.accept);
}

TEST_CASE("double-root edges are infinitely distant and need nothing") {
  Poly A = pow(Poly::from_ints({-1, 1}), 2) * pow(Poly::from_ints({-2, 1}), 2);
  Poly B = pow(Poly::from_ints({-3, 1}), 2) * pow(Poly::from_ints({-4, 1}), 2);
  AnsatzSpec s = make(kHyp, A, B, {fin(1), fin(2)}, {fin(3), fin(4)});
  s.lattice = {{{Rational(7), Rational(0)}, {Rational(0), Rational(7)}}};
  auto v = classify_spec(s)[0];
  CHECK(v.completable);
  for (const auto& r : v.reports) CHECK(r.status->infinitely_distant());
  auto oc = complete_orbifold_check(s);
  CHECK(oc.accept);
  for (const auto& d : oc.diagnostics) CHECK(d.find("diverges") != std::string::npos);
}

TEST_CASE("non-boundary endpoints are recorded, not thrown") {
  AnsatzSpec s = make(kHyp, Poly::from_ints({1, 0, 1}), Poly::from_ints({-12, 7, -1}), {fin(1), fin(2)},
                      {fin(3), fin(4)});
  auto v = classify_spec(s)[0];
  CHECK_FALSE(v.completable);
  CHECK(fired(v, "boundary"));
  CHECK_FALSE(complete_orbifold_check(s).accept);
}

TEST_CASE("fold corner under G+ completes but does not extend") {
  // X = (1, inf), Y = (0, 1): the sides x = 1 and y = 1 map to one line and
  // the corner (1, 1) sits on the diagonal
  AnsatzSpec s = make(kHyp, Poly::from_ints({0, 0, -2, 2}), Poly::from_ints({0, 2, -2}), {fin(1), Endpoint::inf()},
                      {fin(0), fin(1)}, MetricChoice::gplus());
  auto v = classify_spec(s)[0];
  CHECK(v.completable);
  CHECK_FALSE(v.extends_ambitoric);
  s.metric = MetricChoice::g0();
  v = classify_spec(s)[0];
  CHECK(v.violated_rules() == std::vector<std::string>{"iv"});
}

TEST_CASE("P-locus through a corner under Gp") {
  AnsatzSpec s = simple_box();
  s.metric = MetricChoice::gp(Quadratic(1, 0, -3));  // xy = 3 passes (1, 3)
  auto v = classify_spec(s)[0];
  CHECK_FALSE(v.completable);
  CHECK(v.violated_rules() == std::vector<std::string>{"iv"});
  s.metric = MetricChoice::gp(Quadratic(1, 0, -5));  // xy = 5 crosses the open box
  v = classify_spec(s)[0];
  bool plocus = false;
  for (const auto& r : v.reports)
    if (r.component.kind == BoundaryComponent::Kind::PLocus) {
      plocus = true;
      CHECK(r.status->infinitely_distant());
      CHECK_FALSE(r.violated);
    }
  CHECK(plocus);
}

TEST_CASE("elliptic box accepted by the corollary") {
  AnsatzSpec s = make(kEll, Poly::from_ints({0, 1, -1}), Poly::from_ints({-6, 5, -1}), {fin(0), fin(1)},
                      {fin(2), fin(3)});
  auto oc = complete_orbifold_check(s);
  CHECK(oc.accept);
  CHECK(classify_spec(s)[0].completable);
  // normals (-1,0), (0,2), (-3,4), (8,-6): the lattice 2Z x Z misses (-1, 0)
  s.lattice = {{{Rational(2), Rational(0)}, {Rational(0), Rational(1)}}};
  CHECK_FALSE(complete_orbifold_check(s).accept);
}

TEST_CASE("superlattices never turn accept into reject") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  AnsatzSpec base = simple_box();
  int accepted = 0;
  for (int t = 0; t < 30; ++t) {
    Mat2Q L{{{Rational(d(rng)), Rational(d(rng))}, {Rational(d(rng)), Rational(d(rng))}}};
    if (L[0][0] * L[1][1] - L[0][1] * L[1][0] == 0) continue;
    AnsatzSpec s = base;
    s.lattice = L;
    bool a = complete_orbifold_check(s).accept;
    // L / 2 contains L
    AnsatzSpec sup = s;
    for (auto& row : sup.lattice)
      for (auto& e : row) e /= 2;
    bool b = complete_orbifold_check(sup).accept;
    if (a) {
      ++accepted;
      CHECK(b);
    }
    CHECK(classify_spec(s)[0].completable == a);
  }
  CHECK(accepted > 0);
}

TEST_CASE("verdicts are gauge invariant") {
  std::vector<AnsatzSpec> specs{
      simple_box(),
      make(kHyp, Poly::from_ints({-2, 3, -1}), Poly::from_ints({0, -1, -1}), {fin(1), fin(2)}, {fin(-1), fin(0)}),
      make(kEll, Poly::from_ints({0, 1, -1}), Poly::from_ints({-6, 5, -1}), {fin(0), fin(1)}, {fin(2), fin(3)})};
  std::vector<Mobius> ms{Mobius(1, 3, 0, 1),  Mobius(2, 1, 1, 5),  Mobius(1, 0, -1, 7), Mobius(3, -1, 1, 9),
                         Mobius(0, 1, -1, 8), Mobius(5, 2, 2, 3),  Mobius(1, -1, 1, 9), Mobius(4, 1, -1, 6),
                         Mobius(2, 0, 1, 11), Mobius(1, 5, 0, 2)};
  for (const auto& s : specs) {
    auto v = classify_spec(s)[0];
    bool oc = complete_orbifold_check(s).accept;
    for (const auto& M : ms) {
      AnsatzSpec t = mobius_transport(s, M);
      auto w = classify_spec(t)[0];
      CHECK(w.completable == v.completable);
      CHECK(w.extends_ambitoric == v.extends_ambitoric);
      CHECK(w.violated_rules() == v.violated_rules());
      CHECK(complete_orbifold_check(t).accept == oc);
    }
  }
}

TEST_CASE("extends implies every fold report is infinitely distant") {
  std::vector<AnsatzSpec> specs{simple_box(),
                                make(kHyp, Poly::from_ints({0, 0, -2, 2}), Poly::from_ints({0, 2, -2}),
                                     {fin(1), Endpoint::inf()}, {fin(0), fin(1)}, MetricChoice::gplus())};
  for (const auto& s : specs)
    for (const auto& v : classify_spec(s)) {
      if (!v.extends_ambitoric) continue;
      CHECK(v.completable);
      for (const auto& r : v.reports) {
        const auto& b = r.component;
        if (b.kind == BoundaryComponent::Kind::Fold || b.is_fold_and_edge || b.on_positive_fold ||
            b.on_negative_fold)
          CHECK(r.status->infinitely_distant());
      }
    }
}

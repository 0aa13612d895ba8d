#include "ambitoric/algebraic.hpp"
#include "ambitoric/poly.hpp"
#include "doctest.h"

#include <cmath>

using namespace ambitoric;

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("-2.5E2") == -250);
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK(approximate(0.333333333333, 100) == Rational(1, 3));
}

TEST_CASE("huge rationals still convert") {
  Rational big = Rational(BigInt(1) << 2000, (BigInt(1) << 1999) + 1);
  CHECK(to_double(big) == doctest::Approx(2.0));
}

TEST_CASE("poly arithmetic and division") {
  Poly a = Poly::from_ints({-1, 0, 1});  // z^2 - 1
  Poly b = Poly::from_ints({1, 1});
  auto [q, r] = divmod(a, b);
  CHECK(q == Poly::from_ints({-1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(a, Poly::from_ints({1, 2, 1})) == b);
  CHECK(multiplicity_at(Poly::from_ints({1, 2, 1}) * a, Rational(-1)) == 3);
  CHECK(multiplicity_at(a, Rational(2)) == 0);
  CHECK(squarefree_part(pow(b, 3) * Poly::from_ints({0, 1})) == Poly::from_ints({0, 1, 1}));
  Poly g, s, t;
  Poly u = Poly::from_ints({2, 0, 1}), v = Poly::from_ints({1, 1});
  ext_gcd(u, v, g, s, t);
  CHECK(s * u + t * v == g);
  CHECK(g.degree() == 0);
}

TEST_CASE("root isolation counts and separates") {
  // (z^2 - 2)(z - 1/3)(z + 5)
  Poly p = Poly::from_ints({-2, 0, 1}) * Poly(std::vector<Rational>{Rational(-1, 3), 1}) * Poly::from_ints({5, 1});
  auto ivs = isolate_real_roots(p);
  REQUIRE(ivs.size() == 4);
  std::vector<double> expect{-5, -std::sqrt(2.0), 1.0 / 3, std::sqrt(2.0)};
  for (size_t i = 0; i < 4; ++i) {
    auto iv = refine(squarefree_part(p), ivs[i], Rational(1, 1000000));
    CHECK(to_double(iv.lo) <= expect[i] + 1e-12);
    CHECK(to_double(iv.hi) >= expect[i] - 1e-12);
  }
  auto rr = rational_roots(p);
  REQUIRE(rr.size() == 2);
  CHECK(rr[0] == -5);
  CHECK(rr[1] == Rational(1, 3));
  CHECK(Sturm(Poly::from_ints({1, 0, 1})).count_all() == 0);
}

TEST_CASE("real algebraic numbers") {
  Poly p = Poly::from_ints({-2, 0, 1}) * Poly::from_ints({-3, 1});
  RealAlg s2 = RealAlg::root_of(p, 1);
  CHECK(s2.degree() == 2);
  CHECK(s2.approx() == doctest::Approx(std::sqrt(2.0)));
  CHECK(RealAlg::root_of(p, 2).is_rational());
  CHECK(RealAlg::root_of(p, 2).rational_value() == 3);
  CHECK(compare(s2, RealAlg(Rational(7, 5))) > 0);
  CHECK(compare(s2, RealAlg(Rational(3, 2))) < 0);
  // same number, different defining polynomials
  RealAlg other = RealAlg::root_of(Poly::from_ints({4, 0, -5, 0, 1}), 3);  // roots +-1, +-2
  CHECK(other.rational_value() == 2);
  RealAlg s2b = RealAlg::root_of(Poly::from_ints({-2, 0, 1}) * Poly::from_ints({1, 0, 1}), 1);
  CHECK(s2 == s2b);
}

TEST_CASE("minimal polynomial of a quartic factor") {
  // (z^2 - 2)(z^2 - 3): the root sqrt 3 has minpoly z^2 - 3
  Poly p = Poly::from_ints({-2, 0, 1}) * Poly::from_ints({-3, 0, 1});
  RealAlg r = RealAlg::root_of(p, 3);
  CHECK(r.minpoly() == Poly::from_ints({-3, 0, 1}));
  // irreducible quartic z^4 - 10 z^2 + 1 (sqrt2 + sqrt3)
  RealAlg t = RealAlg::root_of(Poly::from_ints({1, 0, -10, 0, 1}), 3);
  CHECK(t.degree() == 4);
  CHECK(t.approx() == doctest::Approx(std::sqrt(2.0) + std::sqrt(3.0)));
}

TEST_CASE("number field arithmetic") {
  auto f = std::make_shared<const RealAlg>(RealAlg::root_of(Poly::from_ints({-5, 0, 1}), 1));
  NFElem g = NFElem::generator(f);
  NFElem one(f, Rational(1));
  CHECK((g * g).is_rational());
  CHECK((g * g).rational_value() == 5);
  NFElem x = (one + g).inverse();
  CHECK(((one + g) * x).rational_value() == 1);
  CHECK(x.approx() == doctest::Approx(1.0 / (1 + std::sqrt(5.0))));
}

TEST_CASE("projective line arcs") {
  Arc a{Endpoint::finite(Rational(1)), Endpoint::inf()};
  CHECK(a.contains(Endpoint::finite(Rational(5))));
  CHECK_FALSE(a.contains(Endpoint::finite(Rational(-5))));
  CHECK_FALSE(a.contains(Endpoint::inf()));
  Arc wrap{Endpoint::finite(Rational(1)), Endpoint::finite(Rational(-1))};
  CHECK(wrap.contains_infinity());
  CHECK(wrap.contains(Endpoint::finite(Rational(-7))));
  for (double s : {0.1, 0.5, 0.9}) CHECK(a.contains(a.at(s)));
  Arc b{Endpoint::inf(), Endpoint::finite(Rational(0))};
  CHECK(b.at(0.5) < 0);
  CHECK_FALSE(arcs_intersect(a, b));
  CHECK(arcs_intersect(a, Arc{Endpoint::finite(Rational(2)), Endpoint::finite(Rational(3))}));
}

TEST_CASE("mobius image of algebraic points") {
  RealAlg s2 = RealAlg::root_of(Poly::from_ints({-2, 0, 1}), 1);
  Endpoint e = mobius_image(Endpoint::finite(s2), 0, -1, 1, 0);  // -1/x
  CHECK(e.approx() == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(mobius_image(Endpoint::inf(), 0, -1, 1, 0).approx() == 0);
  CHECK(mobius_image(Endpoint::finite(Rational(0)), 0, -1, 1, 0).infinite);
}

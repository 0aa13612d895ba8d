#pragma once

#include "ambitoric/ansatz.hpp"
#include "ambitoric/moment.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ambitoric {

struct BoundaryComponent {
  enum class Kind { Edge, Fold, Corner, PLocus };
  Kind kind = Kind::Edge;

  // Edge {x = gamma} or {y = gamma}
  Axis axis = Axis::X;
  Endpoint gamma;
  bool is_fold_and_edge = false;  // q(gamma, .) == 0 (parabolic q, gamma its root)
  bool p_edge = false;            // p(gamma, .) == 0 under Gp

  // Fold: +1 on x = y (1/f vanishes), -1 on q(x,y) = 0 (f vanishes)
  int fold_sign = 0;
  bool proper = false;  // Fold or P-locus meeting the open component

  // Corner (cx, cy)
  Endpoint cx, cy;
  bool on_positive_fold = false, on_negative_fold = false, on_p = false;

  // Fold / P-locus: a point of the locus next to the component, and the sign
  // of the defining function (x - y, q(x,y) or p(x,y)) on the component side
  double sample_x = 0, sample_y = 0;
  int side = 0;

  std::vector<int> adjacent;  // indices into the decomposition
  std::string label;
};

// Edges bordering the component, corners in its closure, proper folds and
// the P-locus (Gp only). Corner adjacency lists name the two edges.
std::vector<BoundaryComponent> decompose_boundary(const AnsatzSpec& s, const BoxComponent& c);

struct CompatibleNormal {
  std::array<double, 2> approx{};
  bool rational = false;
  std::array<Rational, 2> exact;       // when rational
  std::array<std::string, 2> repr;     // exact, as polynomials in gamma otherwise
  bool in_lattice = false;
};

struct DistanceStatus {
  MetricChoice metric;
  enum class Verdict { Finite, InfinitelyDistant };
  Verdict verdict = Verdict::Finite;
  std::optional<double> r_exponent;  // analytic
  std::optional<double> r_numeric;   // fitted slope
  std::optional<bool> integral_convergent;
  // root order m of A (or B) at the edge and vanishing order k of the
  // conformal factor against g0
  std::optional<int> multiplicity, factor_order;
  std::optional<CompatibleNormal> compatible_normal;
  std::string note;

  bool infinitely_distant() const { return verdict == Verdict::InfinitelyDistant; }
};
std::string to_string(DistanceStatus::Verdict v);

// Exact: finite iff k - m > -2. Throws std::invalid_argument for an endpoint
// that is not a true boundary (A(gamma) > 0, no fold or P there) and for an
// edge at infinity when deg A > 4.
DistanceStatus edge_status(const AnsatzSpec& s, const MetricChoice& g, const BoundaryComponent& edge);

// Analytic exponent plus the fitted one. Throws std::invalid_argument unless
// the component is a Fold or PLocus.
DistanceStatus fold_status(const AnsatzSpec& s, const MetricChoice& g, const BoundaryComponent& fold);

struct CornerStatus {
  DistanceStatus status;
  bool admissible = true;
  std::string reason;
};
CornerStatus corner_status(const AnsatzSpec& s, const MetricChoice& g, const BoundaryComponent& corner,
                           const std::vector<DistanceStatus>& adjacent);

// locus: +1 (x - y), -1 (q), 0 (p under Gp). Least-squares slope of
// log |d phi|_g against log |phi| along the gradient line from (x0, y0) into
// {sign(phi) = side}, over 30 geometric values of |phi| in [1e-6, 1e-3].
std::optional<double> fitted_exponent(const AnsatzSpec& s, const MetricChoice& g, int locus, double x0,
                                      double y0, int side);
double analytic_exponent(const MetricChoice& g, int locus);

// Numeric cross-check of the edge integral int dx / sqrt(|A|) from gamma
// toward gamma + side * len, by quadrature in u = -log((x - gamma) / len).
struct QuadratureProbe {
  bool convergent = false;
  double partial = 0;  // last partial integral
  double reach = 0;    // largest u reached
};
QuadratureProbe edge_integral_probe(const Poly& A, const Rational& gamma, int side, double len);

// Coordinates of v in the lattice basis (columns of L), exact.
std::array<Rational, 2> lattice_coordinates(const Mat2Q& L, const std::array<Rational, 2>& v);
bool in_lattice(const Mat2Q& L, const std::array<Rational, 2>& v);

}  // namespace ambitoric

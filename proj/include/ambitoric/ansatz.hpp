#pragma once

#include "ambitoric/algebraic.hpp"
#include "ambitoric/quadratics.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ambitoric {

struct MetricChoice {
  enum class Tag { G0, Gplus, Gminus, Gp };
  Tag tag = Tag::G0;
  Quadratic p;  // only for Gp

  static MetricChoice g0() { return {Tag::G0, {}}; }
  static MetricChoice gplus() { return {Tag::Gplus, {}}; }
  static MetricChoice gminus() { return {Tag::Gminus, {}}; }
  static MetricChoice gp(const Quadratic& p) { return {Tag::Gp, p}; }
  std::string str() const;
};

// Columns generate the lattice, in the basis (d/dt1, d/dt2).
using Mat2Q = std::array<std::array<Rational, 2>, 2>;

struct Frame {
  Quadratic e1, e2;
};

struct AnsatzSpec {
  std::string name;
  Quadratic q;
  Frame frame;
  Poly A, B;
  Arc x_interval, y_interval;
  Mat2Q lattice{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
  MetricChoice metric;
};

// Default frames of the normal forms: hyperbolic (1, z^2), parabolic (1, z),
// elliptic (2z, z^2 - 1). Scalar multiples of a normal-form q reuse them.
std::optional<Frame> default_frame(const Quadratic& q);
// The normal form class of q if q is a multiple of 1, 2z or 1+z^2 and the frame
// is the default one. Exact displayed formulas are used in that case.
std::optional<ConicType> normal_form(const AnsatzSpec& s);

// Sign data of one maximal region of the open box where (x-y) q(x,y) keeps sign.
struct BoxComponent {
  Arc x_range, y_range;   // bounding arcs (the whole box when box_type)
  int sign_xy = 0;        // sign of x - y
  int sign_q = 0;         // sign of q(x,y)
  bool box_type = false;  // no fold meets the open box
  double sample_x = 0, sample_y = 0;
  int label = 0;
  // grid cells (i, j) of the parameter grid belonging to this component
  // (empty for box-type components)
  int grid_n = 0;
  std::vector<std::pair<int, int>> cells;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws ValidationError on: nonpositive A or B inside its interval, empty
// interval, invalid frame, Gp with p not orthogonal to q, singular lattice.
void check_spec(const AnsatzSpec& s);
std::vector<BoxComponent> validate(const AnsatzSpec& s, int grid = 0);

// whether the diagonal x = y or the curve q(x,y) = 0 meets the open box (exact)
bool diagonal_meets(const AnsatzSpec& s);
bool q_curve_meets(const AnsatzSpec& s);
// whether the polarization p(x,y) vanishes somewhere on the open box X x Y
bool zero_locus_meets(const Quadratic& p, const Arc& X, const Arc& Y);

// exact positivity of a polynomial on an open arc
bool positive_on(const Poly& P, const Arc& arc, int weight);

double conformal_factor(const AnsatzSpec& s, double x, double y);
double fibre_volume(const AnsatzSpec& s, const MetricChoice& g, double x, double y);

// default grid density: AMBITORIC_GRID or 48
int default_grid();

// Gauge transport of a whole spec. Throws if an interval contains the pole.
AnsatzSpec mobius_transport(const AnsatzSpec& s, const Mobius& m);
// Splits intervals at the pole first; returns one spec per piece.
std::vector<AnsatzSpec> mobius_transport_split(const AnsatzSpec& s, const Mobius& m);

// Frame coordinates (a, b) of p = a e1 + b e2 (exact); throws if p is outside
// the frame span.
std::array<Rational, 2> frame_coords(const Frame& f, const Quadratic& p);

}  // namespace ambitoric

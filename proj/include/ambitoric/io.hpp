#pragma once

#include "ambitoric/classify.hpp"
#include "ambitoric/moment.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ambitoric {

using Json = nlohmann::ordered_json;

// Spec files are JSON objects:
//   name        string (optional)
//   q           [c0, c1, c2] with q(z) = c0 z^2 + 2 c1 z + c2
//   frame       {"e1": [..], "e2": [..]} (optional, defaults to the normal-form frame)
//   A, B        coefficient lists, constant term first
//   x_interval  [lo, hi], each "inf", a rational ("3/2" or an integer) or
//   y_interval  {"root_of": [coefficients], "index": k} for the k-th real root (0-based)
//   lattice     [[a, b], [c, d]], generators are the columns (optional, default Z^2)
//   metric      "G0" | "G+" | "G-" | {"Gp": [p0, p1, p2]} (optional, default G0)
// Rationals are integers or strings. Unknown keys are rejected.
struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AnsatzSpec spec_from_json(const Json& j);
Json spec_to_json(const AnsatzSpec& s);
AnsatzSpec load_spec(const std::string& path);
// JSON text with values that fit in 80 columns kept on one line
std::string pretty(const Json& j, int indent = 0);
// canonical spec text, trailing newline
std::string dump_spec(const AnsatzSpec& s);

Json endpoint_to_json(const Endpoint& e);
Endpoint endpoint_from_json(const Json& j);
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json verdicts_to_json(const AnsatzSpec& s, const std::vector<Verdict>& vs, const OrbifoldCheck& oc);
// completable, extends_ambitoric and the violated rules per component, plus the
// corollary decision: the part of a report that golden files pin down
Json verdict_summary(const Json& full);

// Fixed-format number text shared by the emitters.
std::string fmt(double v, int digits = 10);

struct MomentSample {
  double x = 0, y = 0, mu1 = 0, mu2 = 0;
};
// Cell centres of a component on its validation grid (an n x n grid over the
// whole box for box-type components), skipping points where mu has a pole.
std::vector<MomentSample> sample_component(const AnsatzSpec& s, const BoxComponent& c, int sign, int n);

// x,y,mu1,mu2 rows after a header. Comment lines starting with '#' carry the
// conic matrix when given.
std::string moment_csv(const std::vector<MomentSample>& rows, const Conic* conic = nullptr);

struct SvgLayer {
  std::vector<Eigen::Vector2d> points;
  std::string stroke = "black";
  std::string fill = "none";
  double width = 1;
  bool closed = false;
  bool dots = false;  // draw each point as a small disc instead of a path
};
// Coordinates are in t*; the affine viewport (written into the file as a
// comment) maps the bounding box of every layer plus a 5% margin onto a
// size x size canvas with mu2 pointing up, with one scale for both axes
// unless equal_axes is false. Paths with fewer than two points are skipped.
std::string render_svg(const std::vector<SvgLayer>& layers, int size = 480, bool equal_axes = true);

// Points of the fold conic within a bounding box, as polylines split where the
// curve leaves the box.
std::vector<std::vector<Eigen::Vector2d>> conic_polylines(const Conic& c, const Eigen::Vector2d& lo,
                                                          const Eigen::Vector2d& hi, int n = 400);

}  // namespace ambitoric

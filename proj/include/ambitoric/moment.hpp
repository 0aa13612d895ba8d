#pragma once

#include "ambitoric/ansatz.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

namespace ambitoric {

// Moment coordinates are taken in the basis of t* dual to (d/dt1, d/dt2).
struct MomentPoint {
  double mu1 = 0, mu2 = 0;
  Eigen::Vector2d vec() const { return {mu1, mu2}; }
};

// The quadratics P_1, P_2 with mu+_i = -P_i(x,y)/q(x,y); (1/2)(P_i q' - P_i' q) = e_i.
std::array<Quadratic, 2> plus_numerators(const AnsatzSpec& s);

// x or y may be +-inf (limit along the edge at infinity). Throws
// std::domain_error naming the vanishing denominator.
MomentPoint moment_map(const AnsatzSpec& s, int sign, double x, double y);

// Identification of q-perp with t. Sign -: frame coordinates of p. Sign +:
// frame coordinates of (1/2)(p q' - p' q). Either way
// <mu(x,y), identify_t(p)> = -p(x,y)/q(x,y) (sign +) or -p(x,y)/(x-y) (sign -).
std::array<Rational, 2> identify_t(const AnsatzSpec& s, const Quadratic& p, int sign = 1);

struct Conic {
  Eigen::Matrix3d Q = Eigen::Matrix3d::Zero();  // homogeneous (mu1, mu2, 1)
  bool exact = false;                            // displayed normal form, not a fit
  bool degenerate = false;                       // image is a point pair
  std::vector<Eigen::Vector2d> points;
  double operator()(const Eigen::Vector2d& m) const;
};

// Image of the fold Z+ = {x = y} (sign +) or Z- = {q(x,y) = 0} (sign -).
Conic fold_conic(const AnsatzSpec& s, int sign);
// a point of the fold with parameter t (x = t)
std::pair<double, double> fold_point(const AnsatzSpec& s, int sign, double t);

struct LineInTstar {
  Eigen::Vector2d normal{1, 0};
  double offset = 0;  // line: <normal, mu> = offset
  // primitive integer normal when the data are rational
  std::optional<std::array<BigInt, 2>> integer_normal;
  double distance(const Eigen::Vector2d& m) const { return (normal.dot(m) - offset) / normal.norm(); }
};

struct Tangency {
  bool certified = false;   // double root found
  bool applicable = false;  // false for degenerate conics
  double discriminant = 0;  // relative
};

enum class Axis { X, Y };

// p^(g)(z) = (z - g) q(z, g); at g = inf the limit c0 z + c1 (up to scale)
Quadratic edge_quadratic(const Quadratic& q, const Rational& g);
Quadratic edge_quadratic_at_infinity(const Quadratic& q);

struct LevelLine {
  LineInTstar line;
  Tangency tangency;
};
LevelLine level_set_line(const AnsatzSpec& s, int sign, Axis axis, const Endpoint& g);

// Image of {p(x,y) = 0}: {<mu, identify_t(p)> = c}. c = 0 except for sign +
// with null q, where the pairing is fixed only up to a constant. Throws
// std::invalid_argument if p is not orthogonal to q or its zero locus is empty.
LineInTstar p_image_line(const AnsatzSpec& s, int sign, const Quadratic& p);

Tangency tangency(const Conic& c, const LineInTstar& l);

struct Polygon {
  std::vector<Eigen::Vector2d> vertices;        // vertex i joins edge i-1 and edge i
  std::vector<std::array<Rational, 2>> normals;  // inward normal of edge i (vertices i, i+1)
  std::vector<double> offsets;                   // edge i: <n_i, mu> = offset_i, inside >=
};

struct CornerCheck {
  int edge_a = 0, edge_b = 0;
  Rational det;
  bool ok = false;
};
// determinant of each adjacent normal pair in the lattice basis
std::vector<CornerCheck> delzant_check(const Polygon& p, const Mat2Q& lattice);
// simple, convex and consistent with the inward normals
bool polygon_consistent(const Polygon& p, double tol = 1e-9);

struct ConvexityResult {
  bool convex = true;
  std::optional<Eigen::Vector2d> witness;
  double spacing = 0;  // median nearest-neighbour distance used as the scale
};
// Unstructured samples: a witness is a point of the convex hull farther than
// 4x the median nearest-neighbour spacing from every sample.
ConvexityResult convexity_check(const std::vector<MomentPoint>& samples);
// Samples on an n x m parameter grid (row major, index i*m + j): a witness is
// a point of the hull covered by no image triangle.
ConvexityResult convexity_check_mesh(const std::vector<MomentPoint>& grid, int n, int m);

std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts);

}  // namespace ambitoric

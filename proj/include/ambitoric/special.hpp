#pragma once

#include "ambitoric/ansatz.hpp"
#include "ambitoric/moment.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambitoric {

struct KerrParams {
  Rational M = 1, alpha = Rational(1, 2);
};
enum class KerrRegion { Exterior, Interior };

// Hyperbolic data A = x^2 - 2 M x - alpha^2, B = alpha^2 - y^2 with Gp, p = 1.
// Exterior box (x+, inf) x (-|alpha|, |alpha|); the interior box defaults to
// x in (-|alpha|, x-). Throws std::invalid_argument unless 0 < |alpha| < M.
AnsatzSpec kerr(const KerrParams& k, KerrRegion region, std::optional<Arc> interior_x = std::nullopt);
// x- and x+
std::pair<RealAlg, RealAlg> kerr_roots(const KerrParams& k);

struct CSCData {
  Quadratic q, p, rho;
  Poly R;
  std::optional<Arc> x_interval, y_interval;  // picked from the sign of A, B when absent
};

struct CSCViolation : std::invalid_argument {
  std::vector<std::string> violations;
  explicit CSCViolation(std::vector<std::string> v);
};

struct CSCReport {
  bool einstein = false;  // rho a multiple of q
  bool symmetric = false; // R = 0, so A = B
};
struct CSCResult {
  AnsatzSpec spec;
  CSCReport report;
};
// A = p rho + R, B = p rho - R, metric Gp. Throws CSCViolation naming each
// failed orthogonality condition.
CSCResult csc_construct(const CSCData& d);
// Random admissible data for q (small integers), deterministic in seed. The
// intervals are chosen where A and B are positive.
CSCData random_csc_data(const Quadratic& q, unsigned seed);

// -[(F^2, A(x))^(2) + (F^2, B(y))^(2)] / ((x - y) q(x,y)), F = x - y for sign -
// and q(x,y) for sign +. The first slot is differentiated in the variable of
// the second. Throws std::domain_error on the fold locus.
double scalar_closed_form(const AnsatzSpec& s, int sign, double x, double y);

struct StandardPolygon {
  Polygon polygon;
  Mat2Q lattice{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
  // tangency point of each edge with 4 mu1 mu2 = -1 (none for the asymptotes)
  std::vector<std::optional<Eigen::Vector2d>> tangency;
  bool relation_holds = true;  // (1,0) + (-k-1,k) = k (-1,1)
  std::string name;
};
// CP2: normals (1,0), (0,-1), (-1,1). Hirzebruch k >= 1: (1,0), (1,-1),
// (-k-1,k), (-1,1) in cyclic order. Every edge line is tangent to the conic.
StandardPolygon standard_polygon_cp2();
StandardPolygon standard_polygon_hirzebruch(int k);

}  // namespace ambitoric

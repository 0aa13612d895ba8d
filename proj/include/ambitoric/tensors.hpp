#pragma once

#include "ambitoric/ansatz.hpp"

#include <Eigen/Dense>

#include <array>

namespace ambitoric {

// Coordinates (x, y, t1, t2). Nothing depends on t; it is kept for output.
struct FramePoint {
  double x = 0, y = 0, t1 = 0, t2 = 0;
};

enum class Field { G0, Gplus, Gminus, Gp, OmegaPlus, OmegaMinus, Jplus, Jminus };
std::string to_string(Field f);

// Components in the basis (d/dx, d/dy, d/dt1, d/dt2). For an endomorphism
// m(i, j) is the i-th component of J(d/dx_j).
struct TensorBlock {
  enum class Kind { Metric, TwoForm, Endomorphism };
  Kind kind = Kind::Metric;
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
};

// Gp uses spec.metric.p; throws std::domain_error on a locus where the field
// is singular and std::invalid_argument for Gp without a Gp metric.
TensorBlock eval_field(const AnsatzSpec& s, Field f, const FramePoint& pt);

// g0 scaled by 1, |f|^-1, |f|, |(x-y) q / p^2|
Eigen::Matrix4d metric_matrix(const AnsatzSpec& s, const MetricChoice& g, double x, double y);
// omega_+ or omega_- (sign = +1 / -1)
Eigen::Matrix4d omega_matrix(const AnsatzSpec& s, int sign, double x, double y);
// J = -G^-1 Omega, J(d_j) in column j, so that omega(X, Y) = g(J X, Y)
Eigen::Matrix4d complex_structure(const AnsatzSpec& s, int sign, double x, double y);

// distance_to_singular returns a first-order distance estimate to the
// nearest zero of x - y, q(x,y) and (under Gp) p(x,y).
double distance_to_singular(const AnsatzSpec& s, const MetricChoice& g, double x, double y);

struct CurvaturePack {
  // lowered R_abcd, index ((a*4 + b)*4 + c)*4 + d
  std::array<double, 256> riemann{};
  Eigen::Matrix4d ricci = Eigen::Matrix4d::Zero();
  double scalar = 0;
  double step = 0;
  double R(int a, int b, int c, int d) const { return riemann[((a * 4 + b) * 4 + c) * 4 + d]; }
  // max deviation from the pair symmetries, relative to the largest component
  double symmetry_defect() const;
};

// Central differences with Richardson extrapolation over steps h and h/2.
// Throws std::domain_error when the stencil (radius 2h) leaves the region
// A > 0, B > 0 or comes within 10h of a singular locus.
CurvaturePack curvature(const AnsatzSpec& s, const MetricChoice& g, const FramePoint& pt, double h = 1e-3);

// max over b of |div G|_b with G the Einstein tensor, by differencing
// curvature packs at step H around pt
double einstein_divergence(const AnsatzSpec& s, const MetricChoice& g, const FramePoint& pt, double h = 1e-3,
                           double H = 1e-2);

// Components (x,y,t1), (x,y,t2), (x,t1,t2), (y,t1,t2) of d omega, central
// differences at h and h/2 combined by Richardson extrapolation.
std::array<double, 4> d_omega(const AnsatzSpec& s, int sign, const FramePoint& pt, double h = 1e-3);

// Pf(Omega) / det[dx; dx J; dy; dy J], the top-form coefficient of omega^2/2
// against dx ^ d^c x ^ dy ^ d^c y, and the predicted f^(-+2) / (A B).
struct OmegaSquare {
  double measured = 0;
  double predicted = 0;
};
OmegaSquare omega_square(const AnsatzSpec& s, int sign, double x, double y);

}  // namespace ambitoric

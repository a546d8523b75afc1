#pragma once

#include <cstdint>
#include <span>

#include "homfinsler/homspace/coset.hpp"
#include "homfinsler/numkernel/minimize.hpp"

namespace homfinsler::homspace {

/// Global factor applied to the closed-form homogeneous S-curvature so that it
/// agrees with the definitional S-curvature of the chart pipeline. Measured once
/// on su(2), inner diag(1,2,3), v = X1, randers eps = 0.3 (ratio 1 to 1e-12).
inline constexpr double kSCurvatureCalibration = 1.0;

/// S(eH, y) = -C/alpha(y) * Phi/(2 Delta^2) * (-<[v,y]_m, y> - alpha(y) Q <[v,y]_m, v>).
/// The first bracket carries no factor b; with one it disagrees with the chart value once b != 1.
double s_curvature_hom(const InvariantABMetric& metric, std::span<const double> y);

struct KvclResult {
  bool pass = true;
  double quadratic_defect = 0.0;   // max |entry| of the symmetrized form y -> <[v,y]_m, y>
  double linear_defect = 0.0;      // max |coefficient| of y -> <[v,y]_m, v>
  Vec<double> witness;             // m-coordinates, max |component| = 1
  double witness_value = 0.0;      // value of the failing condition at the witness
};

/// Linear-algebraic check of <[v,y]_m, y> = <[v,y]_m, v> = 0 for all y in m.
KvclResult kvcl_check(const InvariantABMetric& metric, double tol = 1e-10);
KvclResult kvcl_check(const RiemannianHomMetric& alpha, std::span<const double> v, double tol = 1e-10);

struct SVanishingReport {
  double max_abs_s = 0.0;
  Vec<double> worst_ray;
  bool s_vanishes = false;  // max |S| < 1e-8
  KvclResult kvcl;
  bool consistent = false;  // s_vanishes == kvcl.pass
  std::size_t samples = 0;
};

/// Compares the vanishing of S over random rays with the KVCL condition.
/// Throws PreconditionError for a Riemannian phi.
SVanishingReport s_vanishing_equivalence(const InvariantABMetric& metric, std::size_t samples, std::uint64_t seed = 11);

/// <U(u1,u2), u3> = 1/2 (<[u3,u1]_m, u2> + <[u3,u2]_m, u1>).
Vec<double> u_tensor(const RiemannianHomMetric& metric, std::span<const double> u1, std::span<const double> u2);

/// Sectional curvature of a commuting pair from the U-tensor.
/// Throws PreconditionError if [v1, v1'] != 0.
double commuting_pair_sectional(const RiemannianHomMetric& metric, std::span<const double> v1, std::span<const double> v1p);

/// Sectional curvature of span(x, y) at the origin of a homogeneous Riemannian
/// metric (general bracket formula with the U-tensor).
double sectional_curvature_hom(const RiemannianHomMetric& metric, std::span<const double> x, std::span<const double> y);

/// Symmetric matrix N with w^T N w = <R(y,w)w,y> at the origin.
DenseMatrix<double> sectional_numerator_form(const RiemannianHomMetric& metric, std::span<const double> y);

/// Minimum sectional curvature over planes containing y, with the minimizing edge.
numkernel::PoleValue min_sectional_through(const RiemannianHomMetric& metric, std::span<const double> y);

/// g_V at the origin: the fundamental tensor of F at v. Throws PreconditionError if KVCL fails.
RiemannianHomMetric localize_gv(const InvariantABMetric& metric);

/// F_t = alpha + t beta with beta = <., v>_alpha. Throws PreconditionError if
/// KVCL fails and InadmissibleNormError if t |v|_alpha >= 1.
InvariantABMetric randers_perturb(const RiemannianHomMetric& alpha, std::span<const double> v, double t);

}  // namespace homfinsler::homspace

#pragma once

// Test-only reference implementations. Nothing here reuses the jet engine or the
// structure-constant code of the library: brackets are matrix commutators, the
// transport map comes from a matrix exponential, derivatives are Richardson
// finite differences.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "homfinsler/liealg/lie_algebra.hpp"

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vecd = Eigen::VectorXd;

Mat to_eigen(const homfinsler::numkernel::DenseMatrix<double>& m);
Vecd to_eigen(const std::vector<double>& v);
std::vector<double> to_std(const Vecd& v);

/// A matrix Lie algebra: basis matrices and the Gram matrix of -tr(XY).
struct MatrixAlgebra {
  std::vector<Mat> basis;
  Mat gram;

  explicit MatrixAlgebra(const homfinsler::liealg::LieAlgebra& g);
  std::size_t dim() const { return basis.size(); }
  Mat element(const Vecd& x) const;
  Vecd coords(const Mat& m) const;
  Vecd bracket(const Vecd& x, const Vecd& y) const;
};

/// exp(-X) d/dt exp(X + tY) at t = 0, from the block exponential of [[X, Y], [0, X]].
Vecd transport_expm(const MatrixAlgebra& g, const Vecd& x, const Vecd& y);

/// Matrix of y -> transport_expm(g, x, y).
Mat transport_matrix_expm(const MatrixAlgebra& g, const Vecd& x);

/// Central difference with four levels of Richardson extrapolation.
double richardson(const std::function<double(double)>& f, double x, double h = 1e-2);

/// d^2 f / dt ds at 0 for f(t, s), nested Richardson.
double richardson_mixed(const std::function<double(double, double)>& f, double h = 1e-2);

/// Sectional curvature of span(x, y) for the left-invariant metric `inner` on a Lie group,
/// from the Koszul connection nabla_X Y = 1/2([X,Y] - ad_X^* Y - ad_Y^* X).
double left_invariant_sectional(const MatrixAlgebra& g, const Mat& inner, const Vecd& x, const Vecd& y);

/// Randers metric F = alpha + <b, .> on a Lie group (trivial isotropy), left translated.
struct LieGroupRanders {
  MatrixAlgebra g;
  Mat a;
  Vecd bvec;  // beta coefficients, beta(y) = bvec . y

  double f0(const Vecd& y) const;
  double f(const Vecd& x, const Vecd& y) const;
  /// S-curvature at (x, y) from tau = (n+1)/2 ln(F/alpha) and a finite-difference spray.
  double s_curvature(const Vecd& x, const Vecd& y) const;
  /// Spray coefficients G^i by finite differences of F^2.
  Vecd spray(const Vecd& x, const Vecd& y) const;
  /// Fundamental tensor by finite differences.
  Mat fundamental(const Vecd& x, const Vecd& y) const;
};

}  // namespace oracle

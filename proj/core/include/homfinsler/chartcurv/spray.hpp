#pragma once

#include <span>
#include <vector>

#include "homfinsler/chartcurv/chart.hpp"
#include "homfinsler/numkernel/minimize.hpp"

namespace homfinsler::chartcurv {

/// Spray coefficients G^i at (x, y) and the partials that enter the Riemann operator.
/// Matrices are indexed (i, k) with i the component of G.
struct SprayCoeffs {
  Vec<double> x;
  Vec<double> y;
  Vec<double> G;
  DenseMatrix<double> dG_dx;   // d G^i / d x^k
  DenseMatrix<double> dG_dy;   // d G^i / d y^k
  DenseMatrix<double> y_dxdy;  // y^j d^2 G^i / d x^j d y^k
  std::vector<DenseMatrix<double>> d2G_dyy;  // [i](j, k) = d^2 G^i / d y^j d y^k
  DenseMatrix<double> g;       // fundamental tensor at (x, y)
};

/// G^i = 1/4 g^{il} ([F^2]_{x^k y^l} y^k - [F^2]_{x^l}), with all partials by jets.
SprayCoeffs spray_coeffs(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y);

/// G^i only.
Vec<double> spray_value(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y);

struct GeodesicPath {
  std::vector<double> t;
  std::vector<Vec<double>> x;
  std::vector<Vec<double>> y;
  std::vector<double> speed;  // F(x, y) along the path
  bool exited = false;        // left the chart before T
  double max_speed_drift() const;
};

/// Classical RK4 for x'' + 2 G(x, x') = 0.
GeodesicPath geodesic_integrate(const ChartContext& chart, const ABNormData& norm, std::span<const double> x0,
                                std::span<const double> y0, double T, std::size_t steps);

struct RiemannOperator {
  Vec<double> x;
  Vec<double> y;
  DenseMatrix<double> R;  // R^i_k
  DenseMatrix<double> g;  // g_y at (x, y)
};

/// R^i_k = 2 dG^i/dx^k - y^j d^2G^i/dx^j dy^k + 2 G^j d^2G^i/dy^j dy^k - dG^i/dy^j dG^j/dy^k.
RiemannOperator riemann_op(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y);
RiemannOperator riemann_op(const SprayCoeffs& s);

/// K = <R_y w, w>_y / (<y,y>_y <w,w>_y - <y,w>_y^2). Throws DomainError for w parallel to y.
double flag_curvature(const RiemannOperator& r, std::span<const double> w);
double flag_curvature(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y,
                      std::span<const double> w);

struct FlagSample {
  Vec<double> y;  // flagpole
  Vec<double> w;  // transverse edge, never parallel to y
  double K = 0.0;
};

FlagSample flag_sample(const RiemannOperator& r, std::span<const double> w);

/// Minimum of K over the flags with pole y, with the minimizing edge.
numkernel::PoleValue min_flag_through(const RiemannOperator& r);

/// Defects |g R - (g R)^T| / |g R| and |R y| / (|R| |y|).
double self_adjoint_defect(const RiemannOperator& r);
double pole_defect(const RiemannOperator& r);

}  // namespace homfinsler::chartcurv

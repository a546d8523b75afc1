#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "homfinsler/chartcurv/spray.hpp"
#include "homfinsler/homspace/coset.hpp"

namespace homfinsler::chartcurv {

/// Christoffel symbols of the pullback of an invariant inner product, with
/// one level of x-derivatives: gamma[i](j, k) = Gamma^i_{jk}, dgamma[l][i](j, k) = d_l Gamma^i_{jk}.
struct ChristoffelData {
  Vec<double> x;
  DenseMatrix<double> g;
  std::vector<DenseMatrix<double>> gamma;
  std::vector<std::vector<DenseMatrix<double>>> dgamma;
};

/// g(x) = M(x)^T a M(x) with M(x) the transport matrix, differentiated by jets.
ChristoffelData christoffel(const ChartContext& chart, const DenseMatrix<double>& inner, std::span<const double> x);

/// G^i = 1/2 Gamma^i_{jk} y^j y^k.
Vec<double> christoffel_spray(const ChristoffelData& c, std::span<const double> y);

/// R^i_k = R^i_{jkl} y^j y^l from the Riemann tensor of the Levi-Civita connection.
RiemannOperator christoffel_riemann_op(const ChristoffelData& c, std::span<const double> y);
RiemannOperator christoffel_riemann_op(const ChartContext& chart, const DenseMatrix<double>& inner, std::span<const double> x,
                                       std::span<const double> y);

struct LocalizationPoint {
  Vec<double> x;
  Vec<double> y;  // V(x) in chart coordinates
  double residual = 0.0;  // |R^F - R^{g_V}| / |R^{g_V}| (absolute when R^{g_V} vanishes)
};

struct LocalizationReport {
  std::vector<LocalizationPoint> points;
  double max_residual = 0.0;
  bool pass = false;  // max_residual < tol
};

/// Compares the Finsler Riemann operator along the invariant field V with the
/// Riemann operator of the localized metric g_V, at the origin and at random chart points.
/// Throws PreconditionError when v is not a Killing field of constant length.
LocalizationReport riemannian_localization_check(const ChartContext& chart, const homspace::InvariantABMetric& metric,
                                                 std::size_t random_points = 10, std::uint64_t seed = 17, double tol = 1e-6);

}  // namespace homfinsler::chartcurv

#pragma once

#include <cmath>
#include <span>

#include "homfinsler/homspace/coset.hpp"
#include "homfinsler/numkernel/structure_constants.hpp"

namespace homfinsler::chartcurv {

using homspace::CosetPtr;
using minkowski::ABNormData;
using numkernel::DenseMatrix;
using numkernel::Vec;

inline constexpr double kDefaultChartRadius = 0.5;

/// Exponential coordinates x -> exp(sum x^i e_i) o around the origin coset,
/// with e_i the m-basis of the split.
struct ChartContext {
  CosetPtr space;
  double r_max = kDefaultChartRadius;
  double tol = 1e-14;

  std::size_t dim() const { return space->dim(); }

  /// Throws ChartRadiusError when |x| > r_max.
  void check_radius(std::span<const double> x) const;

  /// pr_m A(X) Y: the chart vector y at x carried back to the origin.
  template <typename T>
  Vec<T> transport(std::span<const T> x, std::span<const T> y) const {
    const auto& split = space->split;
    const auto xg = numkernel::matvec<T, double>(split.m_basis, x);
    const auto yg = numkernel::matvec<T, double>(split.m_basis, y);
    const auto z = numkernel::ad_transport_apply<T>(space->g->structure(), std::span<const T>(xg), std::span<const T>(yg), tol);
    return split.m_coords<T>(std::span<const T>(z));
  }

  /// Matrix of y -> transport(x, y).
  DenseMatrix<double> transport_matrix(std::span<const double> x) const;
};

ChartContext make_chart(CosetPtr space, double r_max = kDefaultChartRadius);

/// F(x, y) = F0(pr_m A(X) Y) for the invariant norm with origin data `norm`.
template <typename T>
T pullback_norm(const ChartContext& chart, const ABNormData& norm, std::span<const T> x, std::span<const T> y) {
  Vec<double> xv(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xv[i] = numkernel::value_of(x[i]);
  chart.check_radius(xv);
  const auto u = chart.transport<T>(x, y);
  return minkowski::ab_eval<T>(norm, std::span<const T>(u));
}

inline double pullback_norm(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y) {
  return pullback_norm<double>(chart, norm, x, y);
}

/// Origin data of a Riemannian homogeneous metric as a norm with phi = 1.
ABNormData riemannian_norm(const DenseMatrix<double>& inner);

}  // namespace homfinsler::chartcurv

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "homfinsler/chartcurv/chart.hpp"

namespace homfinsler::chartcurv {

struct QuadratureConfig {
  /// Gauss nodes per polar angle (the azimuth gets twice as many) for n <= 4.
  std::size_t gauss_points = 24;
  /// Same for 5 <= n <= gauss_max_dim, where the node count grows like m^(n-1).
  std::size_t gauss_points_high = 6;
  /// Largest dimension handled by the product rule; above it Halton nodes are used.
  std::size_t gauss_max_dim = 7;
  /// Low-discrepancy nodes, taken in antipodal pairs.
  std::size_t qmc_points = 200000;
  std::uint64_t seed = 3;
};

/// Fixed nodes and weights for integrals over the unit sphere S^{n-1}.
struct SphereQuadrature {
  std::size_t n = 0;
  std::vector<double> nodes;  // node k occupies [k n, (k+1) n)
  std::vector<double> weights;
  bool product_gauss = false;

  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t k) const { return {nodes.data() + k * n, n}; }
};

/// Product Gauss-Gegenbauer x trapezoid for n <= gauss_max_dim, Halton otherwise.
SphereQuadrature make_sphere_quadrature(std::size_t n, const QuadratureConfig& config = {});

/// Gauss rule for the weight (1 - u^2)^lambda on [-1, 1] (Golub-Welsch).
void gauss_gegenbauer(std::size_t m, double lambda, std::vector<double>& nodes, std::vector<double>& weights);

/// Volume of the Euclidean unit ball in R^n.
double unit_ball_volume(std::size_t n);

/// Vol{y : F(x, y) < 1} by the radial formula (1/n) int r(theta)^n dtheta, with
/// theta taken in alpha-orthonormal coordinates at the origin (a fixed linear map).
template <typename T>
T unit_ball_volume(const ChartContext& chart, const ABNormData& norm, const SphereQuadrature& quad, std::span<const T> x);

/// sigma(x) = omega_n / Vol{y : F(x, y) < 1}.
template <typename T>
T bh_density(const ChartContext& chart, const ABNormData& norm, const SphereQuadrature& quad, std::span<const T> x) {
  return T(unit_ball_volume(quad.n)) / unit_ball_volume<T>(chart, norm, quad, x);
}

inline double bh_density(const ChartContext& chart, const ABNormData& norm, const SphereQuadrature& quad, std::span<const double> x) {
  return bh_density<double>(chart, norm, quad, x);
}

/// S = y^i d tau/dx^i - 2 G^i d tau/dy^i with tau = ln sqrt(det g) - ln sigma.
double s_curvature_chart(const ChartContext& chart, const ABNormData& norm, const SphereQuadrature& quad, std::span<const double> x,
                         std::span<const double> y);

}  // namespace homfinsler::chartcurv

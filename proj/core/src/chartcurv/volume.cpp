#include "homfinsler/chartcurv/volume.hpp"

#include <cmath>
#include <numbers>

#include "homfinsler/numkernel/minimize.hpp"
#include "spray_internal.hpp"

namespace homfinsler::chartcurv {

void gauss_gegenbauer(std::size_t m, double lambda, std::vector<double>& nodes, std::vector<double>& weights) {
  if (m == 0) throw DomainError("gauss_gegenbauer: need at least one node");
  if (!(lambda > -1.0)) throw DomainError("gauss_gegenbauer: lambda must exceed -1");
  DenseMatrix<double> jac(m, m);
  for (std::size_t k = 1; k < m; ++k) {
    const double kk = double(k);
    const double beta = kk * (kk + 2.0 * lambda) / ((2.0 * kk + 2.0 * lambda + 1.0) * (2.0 * kk + 2.0 * lambda - 1.0));
    jac(k, k - 1) = std::sqrt(beta);
    jac(k - 1, k) = std::sqrt(beta);
  }
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(lambda + 1.0) / std::tgamma(lambda + 1.5);
  const auto eig = numkernel::symmetric_eigen(jac);
  nodes.assign(eig.values.begin(), eig.values.end());
  weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) weights[i] = mu0 * eig.vectors(0, i) * eig.vectors(0, i);
}

double unit_ball_volume(std::size_t n) {
  return std::pow(std::numbers::pi, 0.5 * double(n)) / std::tgamma(0.5 * double(n) + 1.0);
}

SphereQuadrature make_sphere_quadrature(std::size_t n, const QuadratureConfig& config) {
  if (n < 2) throw DimensionError("sphere quadrature needs n >= 2");
  SphereQuadrature q;
  q.n = n;
  const double area = double(n) * unit_ball_volume(n);
  if (n <= config.gauss_max_dim) {
    q.product_gauss = true;
    const std::size_t m = n <= 4 ? config.gauss_points : config.gauss_points_high;
    const std::size_t naz = 2 * m;
    std::vector<std::vector<double>> un(n - 2), uw(n - 2);
    for (std::size_t j = 0; j + 2 < n; ++j) {
      const double p = double(n - 2 - j);  // power of sin for the (j+1)-th polar angle
      gauss_gegenbauer(m, 0.5 * (p - 1.0), un[j], uw[j]);
    }
    std::size_t total = naz;
    for (std::size_t j = 0; j + 2 < n; ++j) total *= m;
    q.nodes.reserve(total * n);
    q.weights.reserve(total);
    std::vector<std::size_t> idx(n - 2, 0);
    for (std::size_t c = 0; c < total / naz; ++c) {
      std::size_t r = c;
      for (std::size_t j = 0; j + 2 < n; ++j) {
        idx[j] = r % m;
        r /= m;
      }
      for (std::size_t a = 0; a < naz; ++a) {
        const double phi = 2.0 * std::numbers::pi * (double(a) + 0.5) / double(naz);
        double s = 1.0;
        double w = 2.0 * std::numbers::pi / double(naz);
        for (std::size_t j = 0; j + 2 < n; ++j) {
          const double u = un[j][idx[j]];
          q.nodes.push_back(s * u);
          s *= std::sqrt(std::max(0.0, 1.0 - u * u));
          w *= uw[j][idx[j]];
        }
        q.nodes.push_back(s * std::cos(phi));
        q.nodes.push_back(s * std::sin(phi));
        q.weights.push_back(w);
      }
    }
  } else {
    const std::size_t pairs = std::max<std::size_t>(1, config.qmc_points / 2);
    const std::size_t d = 2 * ((n + 1) / 2);
    numkernel::ShiftedHalton halton(d, config.seed);
    q.nodes.reserve(2 * pairs * n);
    for (std::size_t k = 0; k < pairs; ++k) {
      const auto u = halton.point(k);
      const auto p = numkernel::uniform_to_sphere(u, n);
      for (double c : p) q.nodes.push_back(c);
      for (double c : p) q.nodes.push_back(-c);
    }
    q.weights.assign(2 * pairs, area / double(2 * pairs));
  }
  return q;
}

template <typename T>
T unit_ball_volume(const ChartContext& chart, const ABNormData& norm, const SphereQuadrature& quad, std::span<const T> x) {
  const std::size_t n = chart.dim();
  if (quad.n != n) throw DimensionError("unit_ball_volume: quadrature dimension differs from the chart");
  // alpha-orthonormal frame at the origin
  const auto eig = numkernel::symmetric_eigen(norm.a());
  DenseMatrix<double> lmap(n, n);
  double det_l = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 1.0 / std::sqrt(eig.values[j]);
    det_l *= s;
    for (std::size_t i = 0; i < n; ++i) lmap(i, j) = eig.vectors(i, j) * s;
  }
  Vec<double> xv(n);
  for (std::size_t i = 0; i < n; ++i) xv[i] = numkernel::value_of(x[i]);
  chart.check_radius(xv);
  // F(x, y) = F0(M(x) y) with M(x) linear in y
  DenseMatrix<T> b(n, n);
  {
    std::vector<Vec<T>> mcols(n);
    Vec<T> e(n, T(0.0));
    for (std::size_t k = 0; k < n; ++k) {
      e[k] = T(1.0);
      mcols[k] = chart.transport<T>(x, std::span<const T>(e));
      e[k] = T(0.0);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        T s(0.0);
        for (std::size_t k = 0; k < n; ++k)
          if (lmap(k, j) != 0.0) s += mcols[k][i] * lmap(k, j);
        b(i, j) = s;
      }
  }
  T acc(0.0);
  Vec<T> u(n);
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const auto th = quad.node(k);
    for (std::size_t i = 0; i < n; ++i) {
      T s(0.0);
      for (std::size_t j = 0; j < n; ++j) s += b(i, j) * th[j];
      u[i] = s;
    }
    const T r = T(1.0) / minkowski::ab_eval<T>(norm, std::span<const T>(u));
    T rn = r;
    for (std::size_t p = 1; p < n; ++p) rn = rn * r;
    acc += rn * quad.weights[k];
  }
  return acc * (det_l / double(n));
}

template double unit_ball_volume<double>(const ChartContext&, const ABNormData&, const SphereQuadrature&, std::span<const double>);
template detail::J1 unit_ball_volume<detail::J1>(const ChartContext&, const ABNormData&, const SphereQuadrature&,
                                                 std::span<const detail::J1>);

double s_curvature_chart(const ChartContext& chart, const ABNormData& norm, const SphereQuadrature& quad, std::span<const double> x,
                         std::span<const double> y) {
  using detail::J1;
  const std::size_t n = chart.dim();
  const auto a = detail::spray_pass_a(chart, norm, x, y);
  const J1 ldet = numkernel::log(numkernel::LuDecomposition<J1>(a.g).determinant()) * 0.5;
  const auto* lt = numkernel::JetLayout::get(1, 1);
  Vec<J1> xt(n);
  for (std::size_t i = 0; i < n; ++i) {
    xt[i] = J1(lt, x[i]);
    xt[i][std::size_t(lt->index1(0))] = y[i];
  }
  const J1 sigma = bh_density<J1>(chart, norm, quad, std::span<const J1>(xt));
  double s = ldet.partial({0}) - sigma.partial({0}) / sigma.value();
  for (std::size_t i = 0; i < n; ++i) s -= 2.0 * a.G[i].value() * ldet.partial({int(1 + i)});
  return s;
}

}  // namespace homfinsler::chartcurv

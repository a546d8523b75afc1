#include "homfinsler/chartcurv/riemannian.hpp"

#include <cmath>
#include <random>

#include "homfinsler/homspace/invariants.hpp"
#include "spray_internal.hpp"

namespace homfinsler::chartcurv {

using detail::J1;

ChristoffelData christoffel(const ChartContext& chart, const DenseMatrix<double>& inner, std::span<const double> x) {
  const std::size_t n = chart.dim();
  if (x.size() != n) throw DimensionError("christoffel: x has the wrong dimension");
  if (inner.rows() != n || inner.cols() != n) throw DimensionError("christoffel: inner has the wrong size");
  chart.check_radius(x);
  const auto* l2 = numkernel::JetLayout::get(int(n), 2);
  const auto* l1 = numkernel::JetLayout::get(int(n), 1);
  std::vector<J1> xj(n);
  for (std::size_t i = 0; i < n; ++i) xj[i] = J1::variable(l2, int(i), x[i]);

  std::vector<Vec<J1>> mcols(n);
  Vec<J1> e(n, J1(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = J1(1.0);
    mcols[k] = chart.transport<J1>(std::span<const J1>(xj), std::span<const J1>(e));
    e[k] = J1(0.0);
  }
  DenseMatrix<J1> g2(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      J1 s(0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (inner(i, j) != 0.0) s += mcols[a][i] * mcols[b][j] * inner(i, j);
      g2(a, b) = s;
      g2(b, a) = s;
    }

  // order-1 copies of g and of its first partials
  DenseMatrix<J1> g1(n, n);
  std::vector<DenseMatrix<J1>> dg(n, DenseMatrix<J1>(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      J1 v(l1, g2(a, b).value());
      for (std::size_t c = 0; c < n; ++c) v[std::size_t(l1->index1(int(c)))] = g2(a, b).partial({int(c)});
      g1(a, b) = v;
      for (std::size_t c = 0; c < n; ++c) dg[c](a, b) = g2(a, b).derivative(int(c));
    }

  const numkernel::LuDecomposition<J1> lu(g1);
  ChristoffelData out;
  out.x.assign(x.begin(), x.end());
  out.g = DenseMatrix<double>(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.g(a, b) = g1(a, b).value();
  out.gamma.assign(n, DenseMatrix<double>(n, n));
  out.dgamma.assign(n, std::vector<DenseMatrix<double>>(n, DenseMatrix<double>(n, n)));
  Vec<J1> lower(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) lower[l] = (dg[j](l, k) + dg[k](l, j) - dg[l](j, k)) * 0.5;
      const auto up = lu.solve(std::span<const J1>(lower));
      for (std::size_t i = 0; i < n; ++i) {
        out.gamma[i](j, k) = out.gamma[i](k, j) = up[i].value();
        for (std::size_t c = 0; c < n; ++c) out.dgamma[c][i](j, k) = out.dgamma[c][i](k, j) = up[i].partial({int(c)});
      }
    }
  return out;
}

Vec<double> christoffel_spray(const ChristoffelData& c, std::span<const double> y) {
  const std::size_t n = c.g.rows();
  if (y.size() != n) throw DimensionError("christoffel_spray: y has the wrong dimension");
  Vec<double> G(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) G[i] = 0.5 * numkernel::bilinear<double>(c.gamma[i], y, y);
  return G;
}

RiemannOperator christoffel_riemann_op(const ChristoffelData& c, std::span<const double> y) {
  const std::size_t n = c.g.rows();
  if (y.size() != n) throw DimensionError("christoffel_riemann_op: y has the wrong dimension");
  // R^i_k = y^j y^l (d_k Gamma^i_{lj} - d_l Gamma^i_{kj} + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj})
  DenseMatrix<double> gy(n, n);  // gy(m, k) = Gamma^m_{kj} y^j
  for (std::size_t m = 0; m < n; ++m) {
    const auto col = numkernel::matvec<double, double>(c.gamma[m], y);
    for (std::size_t k = 0; k < n; ++k) gy(m, k) = col[k];
  }
  Vec<double> gyy(n, 0.0);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t l = 0; l < n; ++l) gyy[m] += gy(m, l) * y[l];
  RiemannOperator r;
  r.x = c.x;
  r.y.assign(y.begin(), y.end());
  r.g = c.g;
  r.R = DenseMatrix<double>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double v = numkernel::bilinear<double>(c.dgamma[k][i], y, y);
      for (std::size_t l = 0; l < n; ++l) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += c.dgamma[l][i](k, j) * y[j];
        v -= y[l] * s;
      }
      for (std::size_t m = 0; m < n; ++m) v += c.gamma[i](k, m) * gyy[m] - gy(i, m) * gy(m, k);
      r.R(i, k) = v;
    }
  return r;
}

RiemannOperator christoffel_riemann_op(const ChartContext& chart, const DenseMatrix<double>& inner, std::span<const double> x,
                                       std::span<const double> y) {
  return christoffel_riemann_op(christoffel(chart, inner, x), y);
}

LocalizationReport riemannian_localization_check(const ChartContext& chart, const homspace::InvariantABMetric& metric,
                                                 std::size_t random_points, std::uint64_t seed, double tol) {
  if (metric.space().get() != chart.space.get()) throw PreconditionError("riemannian_localization_check: chart and metric live on different spaces");
  const auto gv = homspace::localize_gv(metric);  // throws PreconditionError on KVCL failure
  const std::size_t n = chart.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  LocalizationReport rep;
  for (std::size_t p = 0; p <= random_points; ++p) {
    Vec<double> x(n, 0.0);
    if (p > 0) {
      for (double& c : x) c = normal(rng);
      const double r = 0.4 * chart.r_max * std::pow(std::uniform_real_distribution<double>(0.0, 1.0)(rng), 1.0 / double(n));
      const double nx = numkernel::norm2(x);
      for (double& c : x) c *= r / nx;
    }
    // V(x) = M(x)^{-1} v in chart coordinates
    const auto m = chart.transport_matrix(x);
    const auto y = numkernel::solve(m, metric.v());
    const auto rf = riemann_op(chart, metric.norm(), x, y);
    const auto rg = christoffel_riemann_op(chart, gv.inner(), x, y);
    const double scale = rg.R.max_abs_entry();
    const double diff = (rf.R - rg.R).max_abs_entry();
    LocalizationPoint pt;
    pt.x = x;
    pt.y = y;
    pt.residual = scale > 1e-12 ? diff / scale : diff;
    rep.max_residual = std::max(rep.max_residual, pt.residual);
    rep.points.push_back(std::move(pt));
  }
  rep.pass = rep.max_residual < tol;
  return rep;
}

}  // namespace homfinsler::chartcurv

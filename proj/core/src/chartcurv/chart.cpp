#include "homfinsler/chartcurv/chart.hpp"

namespace homfinsler::chartcurv {

void ChartContext::check_radius(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionError("chart: point has the wrong dimension");
  const double r = numkernel::norm2(x);
  if (r > r_max) throw ChartRadiusError("chart: |x| = " + std::to_string(r) + " exceeds the chart radius " + std::to_string(r_max));
}

DenseMatrix<double> ChartContext::transport_matrix(std::span<const double> x) const {
  check_radius(x);
  const std::size_t n = dim();
  DenseMatrix<double> m(n, n);
  Vec<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    m.set_col(j, std::span<const double>(transport<double>(x, e)));
    e[j] = 0.0;
  }
  return m;
}

ChartContext make_chart(CosetPtr space, double r_max) {
  if (!(r_max > 0.0) || r_max > kDefaultChartRadius)
    throw ChartRadiusError("chart radius must lie in (0, " + std::to_string(kDefaultChartRadius) + "]");
  ChartContext c;
  c.space = std::move(space);
  c.r_max = r_max;
  return c;
}

ABNormData riemannian_norm(const DenseMatrix<double>& inner) {
  return ABNormData(inner, Vec<double>(inner.rows(), 0.0), minkowski::PhiFunction::riemannian());
}

}  // namespace homfinsler::chartcurv

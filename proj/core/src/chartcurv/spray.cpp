#include "homfinsler/chartcurv/spray.hpp"

#include <cmath>

#include "spray_internal.hpp"

namespace homfinsler::chartcurv {

namespace detail {

namespace {

template <typename S>
numkernel::Jet<S> f_squared(const ChartContext& chart, const ABNormData& norm, const std::vector<numkernel::Jet<S>>& x,
                            const std::vector<numkernel::Jet<S>>& y) {
  const auto f = pullback_norm<numkernel::Jet<S>>(chart, norm, std::span<const numkernel::Jet<S>>(x),
                                                  std::span<const numkernel::Jet<S>>(y));
  return f * f;
}

void check_args(const ChartContext& chart, std::span<const double> x, std::span<const double> y) {
  if (x.size() != chart.dim() || y.size() != chart.dim()) throw DimensionError("spray: x or y has the wrong dimension");
  chart.check_radius(x);
  if (numkernel::norm2(y) == 0.0) throw DomainError("spray: y = 0");
}

}  // namespace

SprayJets<J1> spray_pass_a(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y) {
  check_args(chart, x, y);
  const std::size_t n = chart.dim();
  const auto* outer = numkernel::JetLayout::get(int(2 * n), 2);
  const auto* inner = numkernel::JetLayout::get(int(n + 1), 2);
  std::vector<J2> X(n), Y(n);
  Vec<J1> yv(n);
  for (std::size_t i = 0; i < n; ++i) {
    J1 xi(inner, x[i]);
    xi[std::size_t(inner->index1(0))] = y[i];
    J1 yi(inner, y[i]);
    yi[std::size_t(inner->index1(int(1 + i)))] = 1.0;
    X[i] = J2::variable(outer, int(i), xi);
    Y[i] = J2::variable(outer, int(n + i), yi);
    yv[i] = yi;
  }
  return spray_from_f2<J1>(f_squared<J1>(chart, norm, X, Y), yv, n);
}

SprayJets<J1> spray_pass_b(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y) {
  check_args(chart, x, y);
  const std::size_t n = chart.dim();
  const auto* outer = numkernel::JetLayout::get(int(2 * n), 2);
  const auto* inner = numkernel::JetLayout::get(int(n), 1);
  std::vector<J2> X(n), Y(n);
  Vec<J1> yv(n);
  for (std::size_t i = 0; i < n; ++i) {
    X[i] = J2::variable(outer, int(i), J1::variable(inner, int(i), x[i]));
    Y[i] = J2::variable(outer, int(n + i), J1(inner, y[i]));
    yv[i] = J1(inner, y[i]);
  }
  return spray_from_f2<J1>(f_squared<J1>(chart, norm, X, Y), yv, n);
}

}  // namespace detail

SprayCoeffs spray_coeffs(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y) {
  const std::size_t n = chart.dim();
  const auto a = detail::spray_pass_a(chart, norm, x, y);
  const auto b = detail::spray_pass_b(chart, norm, x, y);
  SprayCoeffs s;
  s.x.assign(x.begin(), x.end());
  s.y.assign(y.begin(), y.end());
  s.G.resize(n);
  s.dG_dx = DenseMatrix<double>(n, n);
  s.dG_dy = DenseMatrix<double>(n, n);
  s.y_dxdy = DenseMatrix<double>(n, n);
  s.d2G_dyy.assign(n, DenseMatrix<double>(n, n));
  s.g = DenseMatrix<double>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& Gi = a.G[i];
    s.G[i] = Gi.value();
    for (std::size_t k = 0; k < n; ++k) {
      s.dG_dy(i, k) = Gi.partial({int(1 + k)});
      s.y_dxdy(i, k) = Gi.partial({0, int(1 + k)});
      s.dG_dx(i, k) = b.G[i].partial({int(k)});
      for (std::size_t j = 0; j < n; ++j) s.d2G_dyy[i](j, k) = Gi.partial({int(1 + j), int(1 + k)});
      s.g(i, k) = a.g(i, k).value();
    }
  }
  return s;
}

Vec<double> spray_value(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y) {
  if (x.size() != chart.dim() || y.size() != chart.dim()) throw DimensionError("spray: x or y has the wrong dimension");
  chart.check_radius(x);
  const std::size_t n = chart.dim();
  const auto* layout = numkernel::JetLayout::get(int(2 * n), 2);
  std::vector<detail::J1> X(n), Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X[i] = detail::J1::variable(layout, int(i), x[i]);
    Y[i] = detail::J1::variable(layout, int(n + i), y[i]);
  }
  const auto f = pullback_norm<detail::J1>(chart, norm, std::span<const detail::J1>(X), std::span<const detail::J1>(Y));
  return detail::spray_from_f2<double>(f * f, Vec<double>(y.begin(), y.end()), n).G;
}

double GeodesicPath::max_speed_drift() const {
  double d = 0.0;
  for (double s : speed) d = std::max(d, std::abs(s - speed.front()));
  return d;
}

GeodesicPath geodesic_integrate(const ChartContext& chart, const ABNormData& norm, std::span<const double> x0,
                                std::span<const double> y0, double T, std::size_t steps) {
  if (steps == 0) throw DomainError("geodesic_integrate: steps must be positive");
  const std::size_t n = chart.dim();
  const double h = T / double(steps);
  GeodesicPath path;
  Vec<double> x(x0.begin(), x0.end()), y(y0.begin(), y0.end());
  auto record = [&](double t) {
    path.t.push_back(t);
    path.x.push_back(x);
    path.y.push_back(y);
    path.speed.push_back(pullback_norm(chart, norm, x, y));
  };
  auto accel = [&](const Vec<double>& xs, const Vec<double>& ys) {
    auto G = spray_value(chart, norm, xs, ys);
    for (double& c : G) c *= -2.0;
    return G;
  };
  auto inside = [&](const Vec<double>& xs) { return numkernel::norm2(xs) <= chart.r_max; };
  record(0.0);
  Vec<double> xt(n), yt(n);
  for (std::size_t s = 0; s < steps; ++s) {
    const auto k1x = y;
    const auto k1y = accel(x, y);
    for (std::size_t i = 0; i < n; ++i) {
      xt[i] = x[i] + 0.5 * h * k1x[i];
      yt[i] = y[i] + 0.5 * h * k1y[i];
    }
    if (!inside(xt)) {
      path.exited = true;
      break;
    }
    const auto k2x = yt;
    const auto k2y = accel(xt, yt);
    for (std::size_t i = 0; i < n; ++i) {
      xt[i] = x[i] + 0.5 * h * k2x[i];
      yt[i] = y[i] + 0.5 * h * k2y[i];
    }
    if (!inside(xt)) {
      path.exited = true;
      break;
    }
    const auto k3x = yt;
    const auto k3y = accel(xt, yt);
    for (std::size_t i = 0; i < n; ++i) {
      xt[i] = x[i] + h * k3x[i];
      yt[i] = y[i] + h * k3y[i];
    }
    if (!inside(xt)) {
      path.exited = true;
      break;
    }
    const auto k4x = yt;
    const auto k4y = accel(xt, yt);
    Vec<double> xn(n);
    for (std::size_t i = 0; i < n; ++i) {
      xn[i] = x[i] + h / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
      y[i] = y[i] + h / 6.0 * (k1y[i] + 2.0 * k2y[i] + 2.0 * k3y[i] + k4y[i]);
    }
    if (!inside(xn)) {
      path.exited = true;
      break;
    }
    x = xn;
    record(double(s + 1) * h);
  }
  return path;
}

RiemannOperator riemann_op(const SprayCoeffs& s) {
  const std::size_t n = s.G.size();
  RiemannOperator r;
  r.x = s.x;
  r.y = s.y;
  r.g = s.g;
  r.R = DenseMatrix<double>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double v = 2.0 * s.dG_dx(i, k) - s.y_dxdy(i, k);
      for (std::size_t j = 0; j < n; ++j) v += 2.0 * s.G[j] * s.d2G_dyy[i](j, k) - s.dG_dy(i, j) * s.dG_dy(j, k);
      r.R(i, k) = v;
    }
  return r;
}

RiemannOperator riemann_op(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y) {
  return riemann_op(spray_coeffs(chart, norm, x, y));
}

double flag_curvature(const RiemannOperator& r, std::span<const double> w) {
  const auto& g = r.g;
  const std::span<const double> y(r.y);
  const double yy = numkernel::bilinear<double>(g, y, y);
  const double ww = numkernel::bilinear<double>(g, w, w);
  const double yw = numkernel::bilinear<double>(g, y, w);
  const double area = yy * ww - yw * yw;
  if (area <= 1e-24 * yy * ww) throw DomainError("flag_curvature: w is parallel to y");
  const auto rw = numkernel::matvec<double, double>(r.R, w);
  return numkernel::bilinear<double>(g, std::span<const double>(rw), w) / area;
}

double flag_curvature(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y,
                      std::span<const double> w) {
  return flag_curvature(riemann_op(chart, norm, x, y), w);
}

FlagSample flag_sample(const RiemannOperator& r, std::span<const double> w) {
  FlagSample f;
  f.K = flag_curvature(r, w);
  f.y = r.y;
  f.w.assign(w.begin(), w.end());
  return f;
}

numkernel::PoleValue min_flag_through(const RiemannOperator& r) {
  const std::size_t n = r.y.size();
  const auto gr = r.g * r.R;
  DenseMatrix<double> nf(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) nf(i, j) = 0.5 * (gr(i, j) + gr(j, i));
  DenseMatrix<double> cols(n, n + 1);
  cols.set_col(0, std::span<const double>(r.y));
  for (std::size_t i = 0; i < n; ++i) cols(i, i + 1) = 1.0;
  const auto q = numkernel::orthonormalize_columns(cols, r.g);
  DenseMatrix<double> p(n, q.cols() - 1);
  for (std::size_t j = 1; j < q.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) p(i, j - 1) = q(i, j);
  const auto red = p.transpose() * nf * p;
  const auto eig = numkernel::symmetric_eigen(red);
  const double yy = numkernel::bilinear<double>(r.g, std::span<const double>(r.y), std::span<const double>(r.y));
  return {eig.values[0] / yy, numkernel::matvec<double, double>(p, std::span<const double>(eig.vectors.col(0)))};
}

double self_adjoint_defect(const RiemannOperator& r) {
  const auto gr = r.g * r.R;
  const double scale = std::max(gr.max_abs_entry(), 1e-300);
  return (gr - gr.transpose()).max_abs_entry() / scale;
}

double pole_defect(const RiemannOperator& r) {
  const auto ry = numkernel::matvec<double, double>(r.R, std::span<const double>(r.y));
  const double scale = std::max(r.R.max_abs_entry() * numkernel::norm2(r.y), 1e-300);
  return numkernel::norm2(ry) / scale;
}

}  // namespace homfinsler::chartcurv

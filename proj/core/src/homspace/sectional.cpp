#include "homfinsler/homspace/sectional.hpp"

#include <cmath>

namespace homfinsler::homspace {

SectionalCurvatureKit::SectionalCurvatureKit(const RiemannianHomMetric& metric)
    : n_(metric.dim()), a_(metric.inner()), ainv_(numkernel::LuDecomposition<double>(metric.inner()).inverse()) {
  const auto& split = metric.coset().split;
  const auto& g = *split.g;
  const std::size_t n = n_;
  std::vector<Vec<double>> eg(n);
  for (std::size_t i = 0; i < n; ++i) eg[i] = split.m_basis.col(i);
  cm_.assign(n * n * n, 0.0);
  std::vector<Vec<double>> cg(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cg[i * n + j] = g.bracket(eg[i], eg[j]);
      const auto m = split.m_coords<double>(cg[i * n + j]);
      for (std::size_t k = 0; k < n; ++k) cm_[(i * n + j) * n + k] = m[k];
    }
  dd_.assign(n * n * n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const auto m = split.m_coords<double>(g.bracket(eg[a], cg[b * n + c]));
        for (std::size_t k = 0; k < n; ++k) dd_[((a * n + b) * n + c) * n + k] = m[k];
      }
  w_.assign(n * n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double* c = cm(k, i);
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += c[r] * a_(r, j);
        w_[(k * n + i) * n + j] = s;
      }
    }
}

double SectionalCurvatureKit::dot(const Vec<double>& x, const Vec<double>& y) const {
  return numkernel::bilinear<double>(a_, std::span<const double>(x), std::span<const double>(y));
}

Vec<double> SectionalCurvatureKit::u(std::span<const double> u1, std::span<const double> u2) const {
  const std::size_t n = n_;
  Vec<double> rhs(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += w_[(k * n + i) * n + j] * (u1[i] * u2[j] + u2[i] * u1[j]);
    rhs[k] = 0.5 * s;
  }
  return numkernel::matvec<double, double>(ainv_, std::span<const double>(rhs));
}

double SectionalCurvatureKit::numerator(std::span<const double> x, std::span<const double> y) const {
  const std::size_t n = n_;
  Vec<double> xy(n, 0.0), xxy(n, 0.0), yyx(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double f = x[i] * y[j];
      if (f == 0.0) continue;
      const double* c = cm(i, j);
      for (std::size_t k = 0; k < n; ++k) xy[k] += f * c[k];
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const double f1 = x[a] * x[b] * y[c];
        const double f2 = y[a] * y[b] * x[c];
        if (f1 == 0.0 && f2 == 0.0) continue;
        const double* d = dd(a, b, c);
        for (std::size_t k = 0; k < n; ++k) {
          xxy[k] += f1 * d[k];
          yyx[k] += f2 * d[k];
        }
      }
  const Vec<double> xv(x.begin(), x.end()), yv(y.begin(), y.end());
  const auto uxy = u(x, y);
  const auto uxx = u(x, x);
  const auto uyy = u(y, y);
  return -0.75 * dot(xy, xy) - 0.5 * dot(xxy, yv) - 0.5 * dot(yyx, xv) + dot(uxy, uxy) - dot(uxx, uyy);
}

double SectionalCurvatureKit::sectional(std::span<const double> x, std::span<const double> y) const {
  const Vec<double> xv(x.begin(), x.end()), yv(y.begin(), y.end());
  const double area = dot(xv, xv) * dot(yv, yv) - dot(xv, yv) * dot(xv, yv);
  if (area <= 1e-24 * dot(xv, xv) * dot(yv, yv)) throw DomainError("sectional curvature: vectors are parallel");
  return numerator(x, y) / area;
}

DenseMatrix<double> SectionalCurvatureKit::numerator_form(std::span<const double> y) const {
  const std::size_t n = n_;
  DenseMatrix<double> nf(n, n);
  std::vector<double> diag(n);
  Vec<double> e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = 1.0;
    diag[i] = numerator(y, e);
    e[i] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    nf(i, i) = diag[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      e[i] = 1.0;
      e[j] = 1.0;
      const double v = 0.5 * (numerator(y, e) - diag[i] - diag[j]);
      e[i] = 0.0;
      e[j] = 0.0;
      nf(i, j) = v;
      nf(j, i) = v;
    }
  }
  return nf;
}

numkernel::PoleValue SectionalCurvatureKit::min_through(std::span<const double> y) const {
  const std::size_t n = n_;
  const Vec<double> yv(y.begin(), y.end());
  const double yy = dot(yv, yv);
  // a-orthonormal basis of the a-orthogonal complement of y
  DenseMatrix<double> cols(n, n + 1);
  cols.set_col(0, y);
  for (std::size_t i = 0; i < n; ++i) cols(i, i + 1) = 1.0;
  const auto q = numkernel::orthonormalize_columns(cols, a_);
  DenseMatrix<double> p(n, q.cols() - 1);
  for (std::size_t j = 1; j < q.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) p(i, j - 1) = q(i, j);
  const auto nf = numerator_form(y);
  const auto red = p.transpose() * nf * p;
  const auto eig = numkernel::symmetric_eigen(red);
  Vec<double> w = numkernel::matvec<double, double>(p, std::span<const double>(eig.vectors.col(0)));
  return {eig.values[0] / yy, w};
}

}  // namespace homfinsler::homspace

#include <Eigen/Dense>

#include "homfinsler/numkernel/dense_matrix.hpp"

namespace homfinsler::numkernel {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix<double>& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(static_cast<long>(i), static_cast<long>(j)) = a(i, j);
  return m;
}

DenseMatrix<double> from_eigen(const Eigen::MatrixXd& m) {
  DenseMatrix<double> a(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return a;
}

}  // namespace

SymmetricEigen symmetric_eigen(const DenseMatrix<double>& a) {
  if (a.rows() != a.cols()) throw DimensionError("symmetric_eigen: matrix not square");
  Eigen::MatrixXd m = to_eigen(a);
  m = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  SymmetricEigen r;
  r.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  r.vectors = from_eigen(es.eigenvectors());
  return r;
}

SymmetricEigen generalized_symmetric_eigen(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("generalized_symmetric_eigen: shape mismatch");
  Eigen::MatrixXd ma = to_eigen(a);
  Eigen::MatrixXd mb = to_eigen(b);
  ma = 0.5 * (ma + ma.transpose());
  mb = 0.5 * (mb + mb.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ma, mb);
  if (es.info() != Eigen::Success) throw InadmissibleNormError("generalized_symmetric_eigen: B not positive definite");
  SymmetricEigen r;
  r.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  r.vectors = from_eigen(es.eigenvectors());
  return r;
}

DenseMatrix<double> nullspace(const DenseMatrix<double>& a, double rel_tol) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return DenseMatrix<double>::identity(n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double thresh = rel_tol * std::max(1.0, smax);
  std::size_t rank = 0;
  for (long i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  const Eigen::MatrixXd& v = svd.matrixV();
  DenseMatrix<double> ns(n, n - rank);
  for (std::size_t j = rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) ns(i, j - rank) = v(static_cast<long>(i), static_cast<long>(j));
  return ns;
}

std::size_t numerical_rank(const DenseMatrix<double>& a, double rel_tol) {
  return a.cols() - nullspace(a, rel_tol).cols();
}

DenseMatrix<double> orthonormalize_columns(const DenseMatrix<double>& cols, const DenseMatrix<double>& q, double drop_tol) {
  const std::size_t d = cols.rows();
  std::vector<Vec<double>> kept;
  auto inner = [&](const Vec<double>& x, const Vec<double>& y) {
    return bilinear<double>(q, std::span<const double>(x), std::span<const double>(y));
  };
  for (std::size_t j = 0; j < cols.cols(); ++j) {
    Vec<double> v = cols.col(j);
    const double n0 = std::sqrt(std::max(0.0, inner(v, v)));
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& k : kept) {
        const double c = inner(v, k);
        for (std::size_t i = 0; i < d; ++i) v[i] -= c * k[i];
      }
    const double nv = std::sqrt(std::max(0.0, inner(v, v)));
    if (nv <= drop_tol * std::max(1.0, n0)) continue;
    for (auto& x : v) x /= nv;
    kept.push_back(std::move(v));
  }
  DenseMatrix<double> out(d, kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j) out.set_col(j, std::span<const double>(kept[j]));
  return out;
}

bool is_symmetric(const DenseMatrix<double>& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

bool is_positive_definite(const DenseMatrix<double>& a) {
  if (a.rows() != a.cols()) return false;
  Eigen::MatrixXd m = to_eigen(a);
  m = 0.5 * (m + m.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace homfinsler::numkernel

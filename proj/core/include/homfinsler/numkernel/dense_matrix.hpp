#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "homfinsler/numkernel/errors.hpp"
#include "homfinsler/numkernel/jet.hpp"

namespace homfinsler::numkernel {

template <typename T>
using Vec = std::vector<T>;

/// Row-major dense matrix generic over the scalar type (double or Jet).
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
      for (double v : row) data_.push_back(T(v));
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }
  static DenseMatrix diagonal(std::span<const double> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = T(d[i]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> col(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  Vec<T> row(std::size_t i) const { return Vec<T>(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)); }
  void set_col(std::size_t j, std::span<const T> c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DenseMatrix& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("DenseMatrix product: inner dimensions differ");
    DenseMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) mul_add(r(i, j), aik, b(k, j));
      }
    return r;
  }

  /// Frobenius norm of the innermost values.
  double norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += value_of(v) * value_of(v);
    return std::sqrt(s);
  }
  double max_abs_entry() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, max_abs(v));
    return m;
  }

 private:
  void check_same(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("DenseMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T, typename U>
Vec<T> matvec(const DenseMatrix<U>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: dimension mismatch");
  Vec<T> r(a.rows(), T{});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if constexpr (std::is_same_v<T, U>) {
        mul_add(r[i], a(i, j), x[j]);
      } else {
        const double aij = a(i, j);
        if (aij != 0.0) r[i] += x[j] * aij;
      }
    }
  return r;
}

template <typename T>
Vec<T> matvec(const DenseMatrix<T>& a, const Vec<T>& x) {
  return matvec<T, T>(a, std::span<const T>(x));
}

/// x^T A y with a double-valued A.
template <typename T>
T bilinear(const DenseMatrix<double>& a, std::span<const T> x, std::span<const T> y) {
  T s{};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T row{};
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij != 0.0) row += y[j] * aij;
    }
    mul_add(s, x[i], row);
  }
  return s;
}

template <typename T>
T dot(std::span<const T> x, std::span<const T> y) {
  T s{};
  for (std::size_t i = 0; i < x.size(); ++i) mul_add(s, x[i], y[i]);
  return s;
}

inline double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

/// LU factorization with partial pivoting on the innermost values.
template <typename T>
class LuDecomposition {
 public:
  explicit LuDecomposition(DenseMatrix<T> a) : lu_(std::move(a)), perm_(lu_.rows()) {
    const std::size_t n = lu_.rows();
    if (lu_.cols() != n) throw DimensionError("LU: matrix not square");
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(value_of(lu_(i, j))));
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      double best = std::abs(value_of(lu_(k, k)));
      for (std::size_t i = k + 1; i < n; ++i) {
        const double v = std::abs(value_of(lu_(i, k)));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (best <= 1e-300 || best <= 1e-14 * scale) throw SingularityError("LU: matrix is singular to working precision");
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        std::swap(perm_[k], perm_[p]);
        sign_ = -sign_;
      }
      const T inv = T(1.0) / lu_(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        lu_(i, k) = lu_(i, k) * inv;
        const T f = lu_(i, k);
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  Vec<T> solve(std::span<const T> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw DimensionError("LU solve: rhs size mismatch");
    Vec<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu_(ii, j) * x[j];
      x[ii] = x[ii] / lu_(ii, ii);
    }
    return x;
  }

  DenseMatrix<T> inverse() const {
    const std::size_t n = lu_.rows();
    DenseMatrix<T> inv(n, n);
    Vec<T> e(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) e[i] = T(i == j ? 1.0 : 0.0);
      auto c = solve(std::span<const T>(e));
      inv.set_col(j, std::span<const T>(c));
    }
    return inv;
  }

  T determinant() const {
    T d = T(static_cast<double>(sign_));
    for (std::size_t i = 0; i < lu_.rows(); ++i) d = d * lu_(i, i);
    return d;
  }

 private:
  DenseMatrix<T> lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

template <typename T>
Vec<T> solve(const DenseMatrix<T>& a, std::span<const T> b) {
  return LuDecomposition<T>(a).solve(b);
}
template <typename T>
Vec<T> solve(const DenseMatrix<T>& a, const Vec<T>& b) {
  return LuDecomposition<T>(a).solve(std::span<const T>(b));
}

// ---------------------------------------------------------------------------
// Double-only routines (backed by Eigen in linalg.cpp).
// ---------------------------------------------------------------------------

struct SymmetricEigen {
  Vec<double> values;          // ascending
  DenseMatrix<double> vectors; // orthonormal columns
};

SymmetricEigen symmetric_eigen(const DenseMatrix<double>& a);

/// Generalized symmetric-definite problem A x = lambda B x, eigenvalues ascending,
/// eigenvectors B-orthonormal.
SymmetricEigen generalized_symmetric_eigen(const DenseMatrix<double>& a, const DenseMatrix<double>& b);

/// Orthonormal basis (columns) of the null space of `a`, using singular values
/// below `rel_tol * max(1, largest singular value)`.
DenseMatrix<double> nullspace(const DenseMatrix<double>& a, double rel_tol = 1e-10);

/// Numerical rank with the same threshold convention as nullspace.
std::size_t numerical_rank(const DenseMatrix<double>& a, double rel_tol = 1e-10);

/// Orthonormalize columns with respect to the SPD form `q` (modified Gram-Schmidt),
/// dropping columns whose residual norm falls below `drop_tol`.
DenseMatrix<double> orthonormalize_columns(const DenseMatrix<double>& cols, const DenseMatrix<double>& q, double drop_tol = 1e-9);

bool is_symmetric(const DenseMatrix<double>& a, double tol);
bool is_positive_definite(const DenseMatrix<double>& a);

}  // namespace homfinsler::numkernel

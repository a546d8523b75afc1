#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "homfinsler/numkernel/dense_matrix.hpp"

namespace homfinsler::numkernel {

/// Sparse structure constants of a Lie bracket in a fixed basis:
/// [X, Y]^k = sum_{i,j} c^k_{ij} X^i Y^j.
class StructureConstants {
 public:
  struct Entry {
    int i;
    int j;
    int k;
    double c;
  };

  StructureConstants() = default;
  StructureConstants(std::size_t dim, std::vector<Entry> entries);

  std::size_t dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }
  double coefficient(int i, int j, int k) const;

  template <typename T>
  Vec<T> bracket(std::span<const T> x, std::span<const T> y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionError("bracket: coordinate vectors have the wrong length");
    Vec<T> z(dim_, T{});
    if constexpr (std::is_same_v<T, double>) {
      for (const auto& e : entries_) z[static_cast<std::size_t>(e.k)] += x[static_cast<std::size_t>(e.i)] * y[static_cast<std::size_t>(e.j)] * e.c;
    } else {
      // entries are sorted by (i, j): form each product once
      T prod{};
      int pi = -1, pj = -1;
      bool zero = true;
      for (const auto& e : entries_) {
        if (e.i != pi || e.j != pj) {
          pi = e.i;
          pj = e.j;
          const auto& xi = x[static_cast<std::size_t>(pi)];
          const auto& yj = y[static_cast<std::size_t>(pj)];
          zero = is_zero(xi) || is_zero(yj);
          if (!zero) prod = xi * yj;
        }
        if (!zero) axpy(z[static_cast<std::size_t>(e.k)], e.c, prod);
      }
    }
    return z;
  }
  template <typename T>
  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
    return bracket(std::span<const T>(x), std::span<const T>(y));
  }

  /// Matrix of ad X: column j is [X, e_j].
  template <typename T>
  DenseMatrix<T> ad(std::span<const T> x) const {
    if (x.size() != dim_) throw DimensionError("ad: coordinate vector has the wrong length");
    DenseMatrix<T> m(dim_, dim_);
    for (const auto& e : entries_) m(static_cast<std::size_t>(e.k), static_cast<std::size_t>(e.j)) += x[static_cast<std::size_t>(e.i)] * e.c;
    return m;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

inline constexpr int kAdTransportMaxTerms = 60;

/// A(X) Y = sum_{k>=0} (-ad X)^k Y / (k+1)!, applied to a vector.
template <typename T>
Vec<T> ad_transport_apply(const StructureConstants& sc, std::span<const T> x, std::span<const T> y, double tol = 1e-14) {
  Vec<T> sum(y.begin(), y.end());
  Vec<T> term(y.begin(), y.end());
  for (int k = 1; k <= kAdTransportMaxTerms; ++k) {
    term = sc.bracket(x, std::span<const T>(term));
    const double f = -1.0 / static_cast<double>(k + 1);
    double norm = 0.0;
    for (auto& t : term) {
      t *= f;
      norm = std::max(norm, max_abs(t));
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
    if (norm < tol) return sum;
  }
  throw DivergenceError("ad_transport: series did not converge within the term cap");
}

/// Matrix form of the transport map A(X) = sum_{k>=0} (-ad X)^k / (k+1)!.
template <typename T>
DenseMatrix<T> ad_transport(const StructureConstants& sc, std::span<const T> x, double tol = 1e-14) {
  const std::size_t n = sc.dim();
  DenseMatrix<T> ad = sc.ad(x);
  ad *= -1.0;
  DenseMatrix<T> sum = DenseMatrix<T>::identity(n);
  DenseMatrix<T> term = DenseMatrix<T>::identity(n);
  for (int k = 1; k <= kAdTransportMaxTerms; ++k) {
    term = term * ad;
    term *= 1.0 / static_cast<double>(k + 1);
    sum += term;
    if (term.max_abs_entry() < tol) return sum;
  }
  throw DivergenceError("ad_transport: series did not converge within the term cap");
}

}  // namespace homfinsler::numkernel

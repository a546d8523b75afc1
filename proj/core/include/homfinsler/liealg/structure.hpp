#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homfinsler/liealg/lie_algebra.hpp"

namespace homfinsler::liealg {

/// Subspace of a parent algebra, stored as B-orthonormal columns in parent coordinates.
class Subalgebra {
 public:
  Subalgebra() = default;
  /// Orthonormalizes the spanning vectors; throws StructuralError unless
  /// bracket-closed to `tol` (pass a negative tol to skip the check).
  Subalgebra(AlgebraPtr parent, const std::vector<Vec<double>>& span, double tol = 1e-12);
  static Subalgebra zero(AlgebraPtr parent);
  static Subalgebra whole(AlgebraPtr parent);
  static Subalgebra from_columns(AlgebraPtr parent, const DenseMatrix<double>& cols, double tol = 1e-12);

  const AlgebraPtr& parent() const { return parent_; }
  const DenseMatrix<double>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.cols(); }
  Vec<double> vector(std::size_t i) const { return basis_.col(i); }

  /// Largest component of [k_a, k_b] outside the span.
  double closure_defect() const;
  /// B-orthogonal projection onto the span.
  Vec<double> project(std::span<const double> x) const;
  bool contains(std::span<const double> x, double tol = 1e-10) const;
  /// The subalgebra as an abstract Lie algebra in its own basis (structure constants only).
  StructureConstants intrinsic_structure() const;

 private:
  AlgebraPtr parent_;
  DenseMatrix<double> basis_;
};

/// g = h + m with m the complement of h for a supplied Ad(H)-invariant form.
struct ReductiveSplit {
  AlgebraPtr g;
  DenseMatrix<double> h_basis;  // N x dh
  DenseMatrix<double> m_basis;  // N x dm, B-orthonormal columns
  DenseMatrix<double> pr_m;     // dm x N, m-coordinates of the m-component
  DenseMatrix<double> pr_h;     // dh x N, h-coordinates of the h-component

  std::size_t dim_h() const { return h_basis.cols(); }
  std::size_t dim_m() const { return m_basis.cols(); }

  Vec<double> to_g(std::span<const double> xm) const;
  template <typename T>
  Vec<T> m_coords(std::span<const T> z) const {
    return numkernel::matvec<T, double>(pr_m, z);
  }
  /// [x, y]_m in m-coordinates for x, y given in m-coordinates.
  Vec<double> bracket_m(std::span<const double> xm, std::span<const double> ym) const;
  /// [x, y] in g-coordinates for x, y given in m-coordinates.
  Vec<double> bracket_g(std::span<const double> xm, std::span<const double> ym) const;
  /// Matrix of y -> [z, y]_m on m (z in g-coordinates).
  DenseMatrix<double> ad_m(std::span<const double> z) const;
  /// B restricted to m in m-coordinates.
  DenseMatrix<double> bi_invariant_on_m() const;
};

/// `inner` is an N x N SPD form on g; throws InvarianceError if [h, m] is not inside m to 1e-12.
ReductiveSplit reductive_split(const AlgebraPtr& g, const Subalgebra& h, const DenseMatrix<double>& inner);
ReductiveSplit reductive_split(const AlgebraPtr& g, const Subalgebra& h);

/// Numerical rank via the centralizer dimension of random integer-lattice elements.
int rank(const LieAlgebra& g, std::uint64_t seed = 7);
int rank(const Subalgebra& k, std::uint64_t seed = 7);

/// Largest ad(g)-invariant subspace of k (fixed-point iteration).
DenseMatrix<double> maximal_ideal_in(const LieAlgebra& g, const Subalgebra& k);

struct InvarianceCheck {
  bool pass = true;
  double worst = 0.0;
  std::size_t z = 0;
  std::size_t x = 0;
  std::size_t y = 0;
};

/// <[z,x]_m, y> + <x, [z,y]_m> = 0 for z in h, x, y in m (inner in m-coordinates).
InvarianceCheck ad_invariance_check(const DenseMatrix<double>& inner_m, const ReductiveSplit& split, double tol = 1e-10);

struct RootPlane {
  std::string label;             // e.g. "e1-e2"
  int p = 0;                     // zero-based indices of the root e_p - e_q
  int q = 0;
  DenseMatrix<double> basis;     // dm x 2 in m-coordinates
};

struct RootPlaneDecomp {
  DenseMatrix<double> m0;        // dm x d0 in m-coordinates
  std::vector<RootPlane> planes;
  /// Projector onto block `i` (0 = m0, then planes) in m-coordinates.
  DenseMatrix<double> projector(std::size_t i) const;
};

/// For su(3) or u(3) with a diagonal toral h. Throws DomainError otherwise.
RootPlaneDecomp root_plane_decomposition(const ReductiveSplit& split);

/// Diagonal entries (as multiples of sqrt(-1)) of a u(n)/su(n) element given by coordinates.
Vec<double> diagonal_of(const LieAlgebra& g, std::span<const double> x);
/// Coordinates of sqrt(-1) diag(d) in a u(n) or su(n) algebra (trace must vanish for su).
Vec<double> diagonal_element(const LieAlgebra& g, std::span<const double> d);

}  // namespace homfinsler::liealg

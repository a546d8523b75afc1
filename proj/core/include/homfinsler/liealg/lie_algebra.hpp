#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "homfinsler/numkernel/dense_matrix.hpp"
#include "homfinsler/numkernel/structure_constants.hpp"

namespace homfinsler::liealg {

using numkernel::DenseMatrix;
using numkernel::StructureConstants;
using numkernel::Vec;

/// A compact Lie algebra realized by real matrices. The stored form is the
/// positive definite bi-invariant inner product <X,Y> = -tr(XY) of the real
/// embedding; built algebras use bases orthonormal for it.
class LieAlgebra {
 public:
  /// Structure constants are computed from matrix commutators.
  LieAlgebra(std::string name, std::vector<DenseMatrix<double>> basis);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t matrix_size() const { return basis_.empty() ? 0 : basis_[0].rows(); }
  const std::vector<DenseMatrix<double>>& basis() const { return basis_; }
  const StructureConstants& structure() const { return sc_; }
  /// Gram matrix of the bi-invariant inner product in this basis.
  const DenseMatrix<double>& form() const { return form_; }
  /// The constant c in <X,Y> = -c tr(XY); recorded for reports.
  static constexpr double form_constant() { return 1.0; }

  Vec<double> bracket(std::span<const double> x, std::span<const double> y) const;
  DenseMatrix<double> ad(std::span<const double> x) const { return sc_.ad<double>(x); }
  double inner(std::span<const double> x, std::span<const double> y) const;

  DenseMatrix<double> element(std::span<const double> x) const;
  /// Coordinates of a matrix in the span of the basis (least squares via the form).
  Vec<double> coordinates(const DenseMatrix<double>& m) const;

  /// Max |c^k_ij + c^k_ji| and max Jacobi residual over basis triples.
  double antisymmetry_defect() const;
  double jacobi_defect() const;
  /// Max |B([z,x],y) + B(x,[z,y])| over basis triples.
  double invariance_defect() const;

  std::size_t center_dim() const;

 private:
  std::string name_;
  std::vector<DenseMatrix<double>> basis_;
  DenseMatrix<double> form_;
  DenseMatrix<double> form_inv_;
  StructureConstants sc_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Family u(n), su(n), sp(n) optionally plus an abelian summand R^k.
struct AlgebraSpec {
  std::string family;
  int n = 1;
  int abelian = 0;
};

AlgebraPtr build_algebra(const AlgebraSpec& spec);
AlgebraPtr make_u(int n);
AlgebraPtr make_su(int n);
AlgebraPtr make_sp(int n);
AlgebraPtr make_abelian(int k);
AlgebraPtr direct_sum(const LieAlgebra& a, const LieAlgebra& b);

Vec<double> bracket(const LieAlgebra& g, std::span<const double> x, std::span<const double> y);

/// Real embeddings of complex and quaternionic matrices.
DenseMatrix<double> embed_complex(const DenseMatrix<double>& re, const DenseMatrix<double>& im);
/// Quaternion entries given as four real parts (1, i, j, k).
DenseMatrix<double> embed_quaternion(const std::array<DenseMatrix<double>, 4>& parts);

}  // namespace homfinsler::liealg

#pragma once

#include <span>
#include <vector>

#include "homfinsler/homspace/coset.hpp"
#include "homfinsler/numkernel/minimize.hpp"

namespace homfinsler::homspace {

/// Bracket tensors of a homogeneous Riemannian metric, precomputed so that
/// sectional curvatures at the origin cost O(dim^3) each.
class SectionalCurvatureKit {
 public:
  explicit SectionalCurvatureKit(const RiemannianHomMetric& metric);

  std::size_t dim() const { return n_; }
  Vec<double> u(std::span<const double> u1, std::span<const double> u2) const;
  /// <R(x,y)y,x> (unnormalized).
  double numerator(std::span<const double> x, std::span<const double> y) const;
  double sectional(std::span<const double> x, std::span<const double> y) const;
  /// Symmetric N with w^T N w = numerator(y, w).
  DenseMatrix<double> numerator_form(std::span<const double> y) const;
  numkernel::PoleValue min_through(std::span<const double> y) const;

 private:
  double dot(const Vec<double>& x, const Vec<double>& y) const;
  const double* cm(std::size_t i, std::size_t j) const { return &cm_[(i * n_ + j) * n_]; }
  const double* dd(std::size_t a, std::size_t b, std::size_t c) const { return &dd_[((a * n_ + b) * n_ + c) * n_]; }

  std::size_t n_;
  DenseMatrix<double> a_;
  DenseMatrix<double> ainv_;
  std::vector<double> cm_;  // [e_i, e_j]_m
  std::vector<double> dd_;  // [e_a, [e_b, e_c]]_m
  std::vector<double> w_;   // <[e_k, e_i]_m, e_j>
};

}  // namespace homfinsler::homspace

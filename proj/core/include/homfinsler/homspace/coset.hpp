#pragma once

#include <memory>
#include <optional>
#include <string>

#include "homfinsler/liealg/structure.hpp"
#include "homfinsler/minkowski/ab_norm.hpp"

namespace homfinsler::homspace {

using liealg::AlgebraPtr;
using liealg::ReductiveSplit;
using liealg::Subalgebra;
using minkowski::ABNormData;
using minkowski::PhiFunction;
using numkernel::DenseMatrix;
using numkernel::Vec;

/// G/H at the Lie-algebra level, split with the bi-invariant form.
struct CosetSpace {
  AlgebraPtr g;
  Subalgebra h;
  ReductiveSplit split;
  std::optional<int> catalog_id;
  std::string label;

  std::size_t dim() const { return split.dim_m(); }
};

using CosetPtr = std::shared_ptr<const CosetSpace>;

CosetPtr make_coset(AlgebraPtr g, Subalgebra h, std::string label, std::optional<int> catalog_id = std::nullopt);

/// Ad(H)-invariant inner product on m together with a Riemannian metric's data.
class RiemannianHomMetric {
 public:
  RiemannianHomMetric(CosetPtr space, DenseMatrix<double> inner);

  const CosetPtr& space() const { return space_; }
  const CosetSpace& coset() const { return *space_; }
  const DenseMatrix<double>& inner() const { return inner_; }
  std::size_t dim() const { return inner_.rows(); }
  double dot(std::span<const double> x, std::span<const double> y) const;

 private:
  CosetPtr space_;
  DenseMatrix<double> inner_;
};

/// F = alpha phi(beta/alpha) on G/H with alpha|_m = inner and beta = <., v>.
class InvariantABMetric {
 public:
  InvariantABMetric(CosetPtr space, DenseMatrix<double> inner, Vec<double> v, PhiFunction phi);

  const CosetPtr& space() const { return space_; }
  const CosetSpace& coset() const { return *space_; }
  const DenseMatrix<double>& inner() const { return data_.a(); }
  const Vec<double>& v() const { return data_.v(); }
  const PhiFunction& phi() const { return data_.phi(); }
  const ABNormData& norm() const { return data_; }
  double b() const { return data_.b(); }
  std::size_t dim() const { return data_.dim(); }

  RiemannianHomMetric alpha() const { return RiemannianHomMetric(space_, data_.a()); }

 private:
  CosetPtr space_;
  ABNormData data_;
};

}  // namespace homfinsler::homspace

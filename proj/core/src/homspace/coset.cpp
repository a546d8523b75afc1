#include "homfinsler/homspace/coset.hpp"

#include <cmath>

namespace homfinsler::homspace {

CosetPtr make_coset(AlgebraPtr g, Subalgebra h, std::string label, std::optional<int> catalog_id) {
  auto s = std::make_shared<CosetSpace>();
  s->g = g;
  s->h = std::move(h);
  s->split = liealg::reductive_split(g, s->h);
  s->catalog_id = catalog_id;
  s->label = std::move(label);
  return s;
}

RiemannianHomMetric::RiemannianHomMetric(CosetPtr space, DenseMatrix<double> inner) : space_(std::move(space)), inner_(std::move(inner)) {
  if (inner_.rows() != space_->dim() || inner_.cols() != space_->dim())
    throw DimensionError("RiemannianHomMetric: inner product has the wrong size");
  if (!numkernel::is_symmetric(inner_, 1e-12 * std::max(1.0, inner_.max_abs_entry())) || !numkernel::is_positive_definite(inner_))
    throw InadmissibleNormError("RiemannianHomMetric: inner product is not symmetric positive definite");
  const auto chk = liealg::ad_invariance_check(inner_, space_->split);
  if (!chk.pass) throw InvarianceError("RiemannianHomMetric: inner product is not Ad(H)-invariant (defect " + std::to_string(chk.worst) + ")");
}

double RiemannianHomMetric::dot(std::span<const double> x, std::span<const double> y) const {
  return numkernel::bilinear<double>(inner_, x, y);
}

InvariantABMetric::InvariantABMetric(CosetPtr space, DenseMatrix<double> inner, Vec<double> v, PhiFunction phi)
    : space_(std::move(space)), data_(std::move(inner), std::move(v), std::move(phi)) {
  const std::size_t n = space_->dim();
  if (data_.dim() != n) throw DimensionError("InvariantABMetric: data dimension differs from dim m");
  if (data_.b() == 0.0) throw DomainError("InvariantABMetric: v = 0 (use the riemannian phi instead)");
  const auto chk = liealg::ad_invariance_check(data_.a(), space_->split);
  if (!chk.pass) throw InvarianceError("InvariantABMetric: inner product is not Ad(H)-invariant (defect " + std::to_string(chk.worst) + ")");
  const auto vg = space_->split.to_g(data_.v());
  for (std::size_t j = 0; j < space_->split.dim_h(); ++j) {
    const auto z = space_->g->bracket(space_->split.h_basis.col(j), vg);
    for (double c : z)
      if (std::abs(c) > 1e-12) throw InvarianceError("InvariantABMetric: v is not fixed by Ad(H)");
  }
  const auto pos = minkowski::positivity_check(data_.phi(), data_.b());
  if (!pos.pass)
    throw InadmissibleNormError("InvariantABMetric: positivity fails at s = " + std::to_string(pos.witness_s) + " (" + pos.condition +
                                " evaluates to " + std::to_string(pos.witness_value) + ")");
}

}  // namespace homfinsler::homspace

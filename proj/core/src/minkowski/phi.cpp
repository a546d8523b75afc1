#include "homfinsler/minkowski/phi.hpp"

#include <sstream>

namespace homfinsler::minkowski {

std::string to_string(PhiFamily f) {
  switch (f) {
    case PhiFamily::Riemannian:
      return "riemannian";
    case PhiFamily::Randers:
      return "randers";
    case PhiFamily::SqrtQuadratic:
      return "sqrt-quadratic";
    case PhiFamily::Polynomial:
      return "polynomial";
  }
  return "unknown";
}

PhiFamily phi_family_from_string(const std::string& name) {
  if (name == "riemannian") return PhiFamily::Riemannian;
  if (name == "randers") return PhiFamily::Randers;
  if (name == "sqrt-quadratic") return PhiFamily::SqrtQuadratic;
  if (name == "polynomial") return PhiFamily::Polynomial;
  throw ConfigError("unknown phi family '" + name + "'");
}

PhiFunction PhiFunction::riemannian() { return PhiFunction{}; }

PhiFunction PhiFunction::randers(double eps) {
  PhiFunction p;
  p.family_ = PhiFamily::Randers;
  p.eps_ = eps;
  return p;
}

PhiFunction PhiFunction::sqrt_quadratic() {
  PhiFunction p;
  p.family_ = PhiFamily::SqrtQuadratic;
  return p;
}

PhiFunction PhiFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw DomainError("polynomial phi needs at least one coefficient");
  PhiFunction p;
  p.family_ = PhiFamily::Polynomial;
  p.coeffs_ = std::move(coeffs);
  return p;
}

PhiFunction PhiFunction::rescaled(double k) const {
  PhiFunction p = *this;
  p.kappa_ *= k;
  return p;
}

std::array<double, 4> PhiFunction::derivatives(double s) const {
  double pt[1] = {s};
  auto j = numkernel::jet_eval([this](std::span<const Jet<double>> a) { return (*this)(a[0]); }, pt, 3);
  return {j.value(), j.partial({0}), j.partial({0, 0}), j.partial({0, 0, 0})};
}

std::string PhiFunction::describe() const {
  std::ostringstream os;
  os << to_string(family_);
  if (family_ == PhiFamily::Randers) os << "(eps=" << eps_ << ")";
  if (family_ == PhiFamily::Polynomial) {
    os << "(";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
    os << ")";
  }
  if (kappa_ != 1.0) os << "[scale=" << kappa_ << "]";
  return os.str();
}

}  // namespace homfinsler::minkowski

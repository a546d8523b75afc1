#pragma once

#include <array>
#include <string>
#include <vector>

#include "homfinsler/numkernel/jet.hpp"

namespace homfinsler::minkowski {

using numkernel::Jet;

enum class PhiFamily { Riemannian, Randers, SqrtQuadratic, Polynomial };

std::string to_string(PhiFamily f);
PhiFamily phi_family_from_string(const std::string& name);

/// phi(s) for the (alpha, beta) construction F = alpha * phi(beta / alpha).
/// Every family carries an argument scale kappa: the stored function is
/// s -> phi_family(kappa * s). Normalizing b to 1 only changes kappa.
class PhiFunction {
 public:
  static PhiFunction riemannian();
  static PhiFunction randers(double eps);
  static PhiFunction sqrt_quadratic();
  static PhiFunction polynomial(std::vector<double> coeffs);

  PhiFamily family() const { return family_; }
  double eps() const { return eps_; }
  double scale() const { return kappa_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Same function of the rescaled argument: result(s) = this(k * s).
  PhiFunction rescaled(double k) const;

  /// Randers parameter of the function as actually evaluated (eps * kappa).
  double effective_eps() const { return eps_ * kappa_; }

  template <typename T>
  T operator()(const T& s) const {
    const T u = s * kappa_;
    switch (family_) {
      case PhiFamily::Riemannian:
        return T(1.0) + u * 0.0;
      case PhiFamily::Randers:
        return u * eps_ + 1.0;
      case PhiFamily::SqrtQuadratic: {
        using std::sqrt;
        using numkernel::sqrt;
        return sqrt(u * u + 1.0);
      }
      case PhiFamily::Polynomial: {
        T acc = T(0.0) + u * 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
        return acc;
      }
    }
    return T(1.0);
  }

  /// (phi, phi', phi'', phi''') at s, by jet differentiation.
  std::array<double, 4> derivatives(double s) const;

  std::string describe() const;

 private:
  PhiFamily family_ = PhiFamily::Riemannian;
  double eps_ = 0.0;
  double kappa_ = 1.0;
  std::vector<double> coeffs_;
};

}  // namespace homfinsler::minkowski

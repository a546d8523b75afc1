#pragma once

#include <span>
#include <string>
#include <vector>

#include "homfinsler/minkowski/phi.hpp"
#include "homfinsler/numkernel/dense_matrix.hpp"

namespace homfinsler::minkowski {

using numkernel::DenseMatrix;
using numkernel::Vec;

/// alpha(y) = sqrt(y^T a y), beta(y) = y^T a v, F = alpha * phi(beta / alpha).
class ABNormData {
 public:
  ABNormData(DenseMatrix<double> a, Vec<double> v, PhiFunction phi);

  /// Same norm with v rescaled to unit alpha-length and phi reparametrized.
  ABNormData normalized() const;

  const DenseMatrix<double>& a() const { return a_; }
  const Vec<double>& v() const { return v_; }
  const PhiFunction& phi() const { return phi_; }
  std::size_t dim() const { return v_.size(); }

  /// alpha-length of v; recomputed on every call.
  double b() const;

  /// Covector of beta: beta(y) = av . y.
  Vec<double> beta_covector() const;

 private:
  DenseMatrix<double> a_;
  Vec<double> v_;
  PhiFunction phi_;
};

/// F(y) for real or jet coordinates. Throws DomainError at y = 0.
template <typename T>
T ab_eval(const ABNormData& data, std::span<const T> y) {
  using std::sqrt;
  using numkernel::sqrt;
  if (y.size() != data.dim()) throw DimensionError("ab_eval: vector has the wrong length");
  const T a2 = numkernel::bilinear<T>(data.a(), y, y);
  if (numkernel::value_of(a2) <= 0.0) throw DomainError("ab_eval: F is not smooth at y = 0");
  const auto av = data.beta_covector();
  T beta{};
  for (std::size_t i = 0; i < y.size(); ++i)
    if (av[i] != 0.0) beta += y[i] * av[i];
  const T alpha = sqrt(a2);
  return alpha * data.phi()(beta / alpha);
}

inline double ab_eval(const ABNormData& data, std::span<const double> y) { return ab_eval<double>(data, y); }

struct FundamentalTensor {
  Vec<double> y;
  DenseMatrix<double> g;
  DenseMatrix<double> ginv;
};

/// g_ij(y) = 1/2 [F^2]_{y^i y^j}. Throws InadmissibleNormError if not SPD.
FundamentalTensor hessian(const ABNormData& data, std::span<const double> y);

/// <u, w>_y = g_ij(y) u^i w^j.
double inner_y(const ABNormData& data, std::span<const double> y, std::span<const double> u, std::span<const double> w);

struct PositivityResult {
  bool pass = true;
  /// Most negative value of min(phi(s), phi - s phi' + (b^2 - s^2) phi'') and where it occurs.
  double witness_s = 0.0;
  double witness_value = 0.0;
  std::string condition;
};

PositivityResult positivity_check(const PhiFunction& phi, double b, std::size_t gridsize = 1001);

struct QDeltaPhi {
  double Q;
  double dQ;
  double ddQ;
  double Delta;
  double Phi;
};

/// Q = phi'/(phi - s phi'), Delta = 1 + sQ + (b^2 - s^2) Q',
/// Phi = -(Q - sQ')(n Delta + 1 + sQ) - (b^2 - s^2)(1 + sQ) Q''.
QDeltaPhi q_delta_phi(const PhiFunction& phi, double s, double b, int n);

/// True iff max |Phi(s)| over a 1001-point interior grid of (-b, b) is below 1e-10.
bool is_riemannian_phi(const PhiFunction& phi, double b, int n);

}  // namespace homfinsler::minkowski

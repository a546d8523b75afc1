#include "homfinsler/minkowski/ab_norm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace homfinsler::minkowski {

using numkernel::Jet;
using numkernel::JetLayout;

ABNormData::ABNormData(DenseMatrix<double> a, Vec<double> v, PhiFunction phi)
    : a_(std::move(a)), v_(std::move(v)), phi_(std::move(phi)) {
  if (a_.rows() != a_.cols() || a_.rows() != v_.size()) throw DimensionError("ABNormData: a and v disagree in dimension");
  if (!numkernel::is_symmetric(a_, 1e-12 * std::max(1.0, a_.max_abs_entry())))
    throw InadmissibleNormError("ABNormData: a is not symmetric");
  if (!numkernel::is_positive_definite(a_)) throw InadmissibleNormError("ABNormData: a is not positive definite");
}

double ABNormData::b() const {
  return std::sqrt(numkernel::bilinear<double>(a_, std::span<const double>(v_), std::span<const double>(v_)));
}

Vec<double> ABNormData::beta_covector() const { return numkernel::matvec<double, double>(a_, std::span<const double>(v_)); }

ABNormData ABNormData::normalized() const {
  const double bb = b();
  if (bb == 0.0) throw DomainError("ABNormData::normalized: v = 0");
  Vec<double> v = v_;
  for (auto& x : v) x /= bb;
  return ABNormData(a_, std::move(v), phi_.rescaled(bb));
}

FundamentalTensor hessian(const ABNormData& data, std::span<const double> y) {
  const std::size_t n = data.dim();
  if (y.size() != n) throw DimensionError("hessian: vector has the wrong length");
  auto j = numkernel::jet_eval(
      [&](std::span<const Jet<double>> yy) {
        auto f = ab_eval<Jet<double>>(data, yy);
        return f * f * 0.5;
      },
      y, 2);
  FundamentalTensor ft;
  ft.y.assign(y.begin(), y.end());
  ft.g = DenseMatrix<double>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) ft.g(i, k) = j.partial({static_cast<int>(i), static_cast<int>(k)});
  if (!numkernel::is_positive_definite(ft.g)) {
    std::ostringstream os;
    os << "fundamental tensor not positive definite at y = (";
    for (std::size_t i = 0; i < n; ++i) os << (i ? ", " : "") << y[i];
    os << ")";
    throw InadmissibleNormError(os.str());
  }
  ft.ginv = numkernel::LuDecomposition<double>(ft.g).inverse();
  return ft;
}

double inner_y(const ABNormData& data, std::span<const double> y, std::span<const double> u, std::span<const double> w) {
  auto ft = hessian(data, y);
  return numkernel::bilinear<double>(ft.g, u, w);
}

PositivityResult positivity_check(const PhiFunction& phi, double b, std::size_t gridsize) {
  if (!(b > 0.0)) throw DomainError("positivity_check: b must be positive");
  if (gridsize < 2) gridsize = 2;
  PositivityResult r;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gridsize; ++i) {
    const double s = (i + 1 == gridsize) ? b : -b + 2.0 * b * static_cast<double>(i) / static_cast<double>(gridsize - 1);
    const auto d = phi.derivatives(s);
    const double crit = d[0] - s * d[1] + (b * b - s * s) * d[2];
    if (d[0] < worst) {
      worst = d[0];
      r.witness_s = s;
      r.witness_value = d[0];
      r.condition = "phi(s) > 0";
    }
    if (crit < worst) {
      worst = crit;
      r.witness_s = s;
      r.witness_value = crit;
      r.condition = "phi - s phi' + (b^2 - s^2) phi'' > 0";
    }
  }
  r.pass = worst > 0.0;
  return r;
}

QDeltaPhi q_delta_phi(const PhiFunction& phi, double s, double b, int n) {
  // Q as a function of s needs phi' to order 2 in s, so phi itself to order 3.
  const auto d = phi.derivatives(s);
  const double den = d[0] - s * d[1];
  if (std::abs(den) < 1e-14) throw SingularityError("q_delta_phi: phi - s phi' vanishes");
  // Differentiate Q = phi'/(phi - s phi') using a jet in s built from the derivative list.
  const JetLayout* lay = JetLayout::get(1, 2);
  Jet<double> p1(lay, d[1]);
  p1[1] = d[2];
  p1[2] = 0.5 * d[3];
  Jet<double> p0(lay, d[0]);
  p0[1] = d[1];
  p0[2] = 0.5 * d[2];
  Jet<double> sj = Jet<double>::variable(lay, 0, s);
  Jet<double> Q = p1 / (p0 - sj * p1);
  QDeltaPhi r{};
  r.Q = Q.value();
  r.dQ = Q.partial({0});
  r.ddQ = Q.partial({0, 0});
  const double w = b * b - s * s;
  r.Delta = 1.0 + s * r.Q + w * r.dQ;
  r.Phi = -(r.Q - s * r.dQ) * (n * r.Delta + 1.0 + s * r.Q) - w * (1.0 + s * r.Q) * r.ddQ;
  return r;
}

bool is_riemannian_phi(const PhiFunction& phi, double b, int n) {
  if (!(b > 0.0)) throw DomainError("is_riemannian_phi: b must be positive");
  const std::size_t grid = 1001;
  for (std::size_t i = 0; i < grid; ++i) {
    const double s = -b + 2.0 * b * static_cast<double>(i + 1) / static_cast<double>(grid + 1);
    if (std::abs(q_delta_phi(phi, s, b, n).Phi) >= 1e-10) return false;
  }
  return true;
}

}  // namespace homfinsler::minkowski

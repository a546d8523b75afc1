#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "homfinsler/minkowski/ab_norm.hpp"
#include "homfinsler/minkowski/phi.hpp"
#include "oracles.hpp"

namespace mk = homfinsler::minkowski;
using homfinsler::numkernel::DenseMatrix;

namespace {

mk::ABNormData sample_norm(const mk::PhiFunction& phi) {
  DenseMatrix<double> a{{2.0, 0.3, 0.0}, {0.3, 1.0, 0.1}, {0.0, 0.1, 1.5}};
  return mk::ABNormData(a, {0.2, -0.1, 0.3}, phi);
}

std::vector<mk::PhiFunction> families() {
  return {mk::PhiFunction::riemannian(), mk::PhiFunction::randers(0.4), mk::PhiFunction::sqrt_quadratic(),
          mk::PhiFunction::polynomial({1.0, 0.2, 0.3})};
}

}  // namespace

TEST(Phi, DerivativesMatchFiniteDifferences) {
  for (const auto& phi : families()) {
    const double s = 0.17;
    const auto d = phi.derivatives(s);
    EXPECT_NEAR(d[0], phi(s), 1e-15);
    EXPECT_NEAR(d[1], oracle::richardson([&](double t) { return phi(t); }, s), 1e-10) << phi.describe();
    EXPECT_NEAR(d[2], oracle::richardson([&](double t) { return phi.derivatives(t)[1]; }, s), 1e-9) << phi.describe();
    EXPECT_NEAR(d[3], oracle::richardson([&](double t) { return phi.derivatives(t)[2]; }, s), 1e-8) << phi.describe();
  }
}

TEST(Phi, FamilyNamesRoundTrip) {
  for (const auto& phi : families()) EXPECT_EQ(mk::phi_family_from_string(mk::to_string(phi.family())), phi.family());
  EXPECT_THROW(mk::phi_family_from_string("kropina"), homfinsler::Error);
}

TEST(ABNorm, PositivelyHomogeneousAndEulerIdentity) {
  for (const auto& phi : families()) {
    const auto norm = sample_norm(phi);
    const std::vector<double> y = {0.4, -1.1, 0.7};
    std::vector<double> y3 = y;
    for (auto& c : y3) c *= 3.0;
    EXPECT_NEAR(mk::ab_eval(norm, y3), 3.0 * mk::ab_eval(norm, y), 1e-14);
    const auto h = mk::hessian(norm, y);
    const double f = mk::ab_eval(norm, y);
    EXPECT_NEAR(homfinsler::numkernel::bilinear<double>(h.g, std::span<const double>(y), std::span<const double>(y)), f * f, 1e-13);
    EXPECT_LT((h.g * h.ginv - DenseMatrix<double>::identity(3)).max_abs_entry(), 1e-12);
  }
}

TEST(ABNorm, HessianMatchesFiniteDifferences) {
  const auto norm = sample_norm(mk::PhiFunction::polynomial({1.0, 0.2, 0.3}));
  const std::vector<double> y = {0.4, -1.1, 0.7};
  const auto h = mk::hessian(norm, y);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double fd = 0.5 * oracle::richardson_mixed([&](double t, double s) {
        auto z = y;
        z[i] += t;
        z[j] += s;
        const double f = mk::ab_eval(norm, z);
        return f * f;
      });
      EXPECT_NEAR(h.g(i, j), fd, 1e-8);
    }
}

TEST(ABNorm, ZeroVectorAndWrongLengthThrow) {
  const auto norm = sample_norm(mk::PhiFunction::randers(0.2));
  EXPECT_THROW(mk::ab_eval(norm, std::vector<double>{0, 0, 0}), homfinsler::DomainError);
  EXPECT_THROW(mk::ab_eval(norm, std::vector<double>{1, 0}), homfinsler::DimensionError);
}

TEST(ABNorm, NormalizedKeepsTheNorm) {
  const auto norm = sample_norm(mk::PhiFunction::randers(0.4));
  const auto n1 = norm.normalized();
  EXPECT_NEAR(n1.b(), 1.0, 1e-14);
  const std::vector<double> y = {0.3, 0.2, -0.9};
  EXPECT_NEAR(mk::ab_eval(n1, y), mk::ab_eval(norm, y), 1e-14);
}

TEST(Positivity, RandersNeedsEpsTimesBBelowOne) {
  EXPECT_TRUE(mk::positivity_check(mk::PhiFunction::randers(0.5), 1.9).pass);
  const auto r = mk::positivity_check(mk::PhiFunction::randers(0.5), 2.1);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.witness_s, -2.1, 1e-12);
  EXPECT_THROW(mk::positivity_check(mk::PhiFunction::randers(0.5), 0.0), homfinsler::DomainError);
}

TEST(QDeltaPhi, RandersClosedForm) {
  // phi = 1 + eps s: Q = eps, Delta = 1 + eps s, Phi = -eps (n+1) (1 + eps s)
  const double eps = 0.3, s = 0.4, b = 0.9;
  const int n = 5;
  const auto q = mk::q_delta_phi(mk::PhiFunction::randers(eps), s, b, n);
  EXPECT_NEAR(q.Q, eps, 1e-15);
  EXPECT_NEAR(q.dQ, 0.0, 1e-15);
  EXPECT_NEAR(q.Delta, 1.0 + eps * s, 1e-15);
  EXPECT_NEAR(q.Phi, -eps * (n + 1) * (1.0 + eps * s), 1e-14);
}

TEST(QDeltaPhi, RiemannianDetection) {
  // sqrt(1 + s^2) gives F = sqrt(alpha^2 + beta^2), a Riemannian norm
  EXPECT_TRUE(mk::is_riemannian_phi(mk::PhiFunction::riemannian(), 0.8, 3));
  EXPECT_TRUE(mk::is_riemannian_phi(mk::PhiFunction::sqrt_quadratic(), 0.8, 3));
  EXPECT_FALSE(mk::is_riemannian_phi(mk::PhiFunction::randers(0.1), 0.8, 3));
  EXPECT_FALSE(mk::is_riemannian_phi(mk::PhiFunction::polynomial({1.0, 0.2, 0.3}), 0.8, 3));
}

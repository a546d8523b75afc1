#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "homfinsler/chartcurv/chart.hpp"
#include "homfinsler/chartcurv/riemannian.hpp"
#include "homfinsler/chartcurv/spray.hpp"
#include "homfinsler/chartcurv/volume.hpp"
#include "homfinsler/homspace/catalog.hpp"
#include "homfinsler/homspace/invariants.hpp"
#include "oracles.hpp"

namespace cc = homfinsler::chartcurv;
namespace hs = homfinsler::homspace;
namespace la = homfinsler::liealg;
using homfinsler::minkowski::PhiFunction;
using homfinsler::numkernel::DenseMatrix;

namespace {

hs::CosetPtr su2_group() {
  const auto g = la::make_su(2);
  return hs::make_coset(g, la::Subalgebra::zero(g), "su(2)");
}

const DenseMatrix<double> kDiag123{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};

hs::InvariantABMetric su2_randers() { return {su2_group(), kDiag123, {1, 0, 0}, PhiFunction::randers(0.3)}; }

oracle::LieGroupRanders su2_randers_oracle() {
  const auto g = la::make_su(2);
  oracle::LieGroupRanders r{oracle::MatrixAlgebra(*g), oracle::to_eigen(kDiag123), oracle::Vecd::Zero(3)};
  r.bvec(0) = 0.3;
  return r;
}

// Frozen from the finite-difference oracle at x = (0.1, -0.2, 0.15), y = (0.3, -0.5, 0.8)
// on su(2), diag(1,2,3), v = X1, randers eps = 0.3 (oracle agreement 8e-11).
constexpr double kSChartFrozen = 0.13760202608586433;

}  // namespace

TEST(Chart, TransportMatchesMatrixExponentialOnCoset) {
  hs::CaseParams p;
  p.id = 6;
  const auto rc = hs::realize_case(p);
  const auto chart = cc::make_chart(rc.space);
  const oracle::MatrixAlgebra mg(*rc.space->g);
  const oracle::Mat mb = oracle::to_eigen(rc.space->split.m_basis);
  const oracle::Mat prm = oracle::to_eigen(rc.space->split.pr_m);
  const std::vector<double> x = {0.1, -0.05, 0.2, 0.0, 0.12, -0.1, 0.03};
  const std::vector<double> y = {0.4, 0.1, -0.3, 0.9, 0.0, 0.2, -0.6};
  const auto t = chart.transport<double>(x, y);
  const oracle::Vecd ref = prm * oracle::transport_expm(mg, mb * oracle::to_eigen(x), mb * oracle::to_eigen(y));
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(t[i], ref(long(i)), 1e-13);
}

TEST(Chart, RadiusIsEnforced) {
  const auto chart = cc::make_chart(su2_group());
  const auto m = su2_randers();
  EXPECT_THROW(cc::pullback_norm(chart, m.norm(), std::vector<double>{0.6, 0, 0}, std::vector<double>{1, 0, 0}),
               homfinsler::ChartRadiusError);
}

TEST(Chart, PullbackAtOriginIsTheNormAndAbelianIsFlat) {
  const auto m = su2_randers();
  const auto chart = cc::make_chart(m.space());
  const std::vector<double> y = {0.3, -0.5, 0.8}, x0 = {0, 0, 0};
  EXPECT_DOUBLE_EQ(cc::pullback_norm(chart, m.norm(), x0, y), homfinsler::minkowski::ab_eval(m.norm(), y));
  const auto g = la::make_abelian(3);
  const auto flat = cc::make_chart(hs::make_coset(g, la::Subalgebra::zero(g), "R^3"));
  const std::vector<double> x = {0.1, 0.2, -0.3};
  EXPECT_DOUBLE_EQ(cc::pullback_norm(flat, m.norm(), x, y), cc::pullback_norm(flat, m.norm(), x0, y));
}

TEST(Spray, MatchesFiniteDifferenceOracle) {
  const auto m = su2_randers();
  const auto chart = cc::make_chart(m.space());
  const std::vector<double> x = {0.1, -0.2, 0.15}, y = {0.3, -0.5, 0.8};
  const auto G = cc::spray_value(chart, m.norm(), x, y);
  const auto ref = su2_randers_oracle().spray(oracle::to_eigen(x), oracle::to_eigen(y));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(G[i], ref(i), 1e-8);
  const auto s = cc::spray_coeffs(chart, m.norm(), x, y);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(s.G[i], G[i], 1e-14);
}

TEST(Spray, TwoHomogeneousInY) {
  const auto m = su2_randers();
  const auto chart = cc::make_chart(m.space());
  const std::vector<double> x = {0.1, -0.2, 0.15}, y = {0.3, -0.5, 0.8}, y3 = {0.9, -1.5, 2.4};
  const auto a = cc::spray_value(chart, m.norm(), x, y), b = cc::spray_value(chart, m.norm(), x, y3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(b[i], 9.0 * a[i], 1e-13);
  EXPECT_THROW(cc::spray_value(chart, m.norm(), x, std::vector<double>{0, 0, 0}), homfinsler::Error);
}

TEST(RiemannOperator, SelfAdjointAndKillsThePole) {
  hs::CaseParams p;
  p.id = 6;
  const auto rc = hs::realize_case(p);
  const auto m = rc.ab_metric(std::vector<double>{0.6, 0.5, 1.0, 1.2}, PhiFunction::polynomial({1.0, 0.2, 0.3}));
  const auto chart = cc::make_chart(rc.space);
  const std::vector<double> x = {0.05, 0.0, -0.1, 0.1, 0.0, 0.02, 0.0}, y = {0.4, 0.1, -0.3, 0.9, 0.0, 0.2, -0.6};
  const auto r = cc::riemann_op(chart, m.norm(), x, y);
  EXPECT_LT(cc::self_adjoint_defect(r), 1e-10);
  EXPECT_LT(cc::pole_defect(r), 1e-10);
  const auto fs = cc::flag_sample(r, std::vector<double>{0, 1, 0, 0, 0, 0, 0});
  EXPECT_EQ(fs.y, y);
  EXPECT_THROW(cc::flag_sample(r, y), homfinsler::DomainError);
  const auto mn = cc::min_flag_through(r);
  EXPECT_LE(mn.value, fs.K + 1e-12);
  EXPECT_NEAR(cc::flag_curvature(r, mn.w), mn.value, 1e-10);
}

TEST(RiemannOperator, RiemannianAgreesWithChristoffelPipeline) {
  const auto chart = cc::make_chart(su2_group());
  const std::vector<double> x = {0.1, -0.2, 0.15}, y = {0.3, -0.5, 0.8}, w = {0.2, 0.7, 0.1};
  const auto f = cc::riemann_op(chart, cc::riemannian_norm(kDiag123), x, y);
  const auto c = cc::christoffel_riemann_op(chart, kDiag123, x, y);
  EXPECT_LT((f.R - c.R).max_abs_entry(), 1e-10 * c.R.max_abs_entry());
  const auto cd = cc::christoffel(chart, kDiag123, x);
  const auto gs = cc::christoffel_spray(cd, y);
  const auto gf = cc::spray_value(chart, cc::riemannian_norm(kDiag123), x, y);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(gs[i], gf[i], 1e-13);
  // at the origin the flag curvature is the sectional curvature of the left-invariant metric
  const std::vector<double> x0 = {0, 0, 0};
  const auto r0 = cc::riemann_op(chart, cc::riemannian_norm(kDiag123), x0, y);
  const auto g = la::make_su(2);
  EXPECT_NEAR(cc::flag_curvature(r0, w),
              oracle::left_invariant_sectional(oracle::MatrixAlgebra(*g), oracle::to_eigen(kDiag123), oracle::to_eigen(y),
                                               oracle::to_eigen(w)),
              1e-10);
}

TEST(Quadrature, GaussGegenbauerIntegratesPolynomials) {
  std::vector<double> x, w;
  cc::gauss_gegenbauer(6, 0.5, x, w);  // weight sqrt(1 - u^2)
  double m0 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m0 += w[i];
    m2 += w[i] * x[i] * x[i];
  }
  EXPECT_NEAR(m0, std::numbers::pi / 2.0, 1e-14);
  EXPECT_NEAR(m2, std::numbers::pi / 8.0, 1e-14);
  EXPECT_THROW(cc::gauss_gegenbauer(0, 0.5, x, w), homfinsler::DomainError);
}

TEST(Quadrature, SphereAreaAndEllipsoidVolume) {
  for (std::size_t n : {2u, 3u, 5u, 7u, 8u}) {
    const auto q = cc::make_sphere_quadrature(n);
    double area = 0.0;
    for (double wt : q.weights) area += wt;
    EXPECT_NEAR(area, double(n) * cc::unit_ball_volume(n), 1e-10 * area) << n;
  }
  // Riemannian unit ball of diag(1,2,3) has volume omega_3 / sqrt(6)
  const auto chart = cc::make_chart(su2_group());
  const auto q = cc::make_sphere_quadrature(3);
  const std::vector<double> x0 = {0, 0, 0};
  EXPECT_NEAR(cc::unit_ball_volume<double>(chart, cc::riemannian_norm(kDiag123), q, std::span<const double>(x0)),
              cc::unit_ball_volume(3) / std::sqrt(6.0), 1e-13);
  // Randers balls have the Riemannian volume times (1 - b^2)^{-(n+1)/2}
  const auto m = su2_randers();
  EXPECT_NEAR(cc::unit_ball_volume<double>(chart, m.norm(), q, std::span<const double>(x0)),
              cc::unit_ball_volume(3) / std::sqrt(6.0) * std::pow(1.0 - 0.09, -2.0), 1e-10);
}

TEST(SCurvatureChart, MatchesOracleAndClosedForm) {
  const auto m = su2_randers();
  const auto chart = cc::make_chart(m.space());
  const auto q = cc::make_sphere_quadrature(3);
  const std::vector<double> x0 = {0, 0, 0}, x = {0.1, -0.2, 0.15}, y = {0.3, -0.5, 0.8};
  const double s0 = cc::s_curvature_chart(chart, m.norm(), q, x0, y);
  EXPECT_NEAR(s0, hs::kSCurvatureCalibration * hs::s_curvature_hom(m, y), 1e-10);
  const double s1 = cc::s_curvature_chart(chart, m.norm(), q, x, y);
  EXPECT_NEAR(s1, kSChartFrozen, 1e-11);
  EXPECT_NEAR(s1, su2_randers_oracle().s_curvature(oracle::to_eigen(x), oracle::to_eigen(y)), 1e-8);
}

TEST(Geodesic, SpeedIsConserved) {
  const auto m = su2_randers();
  const auto chart = cc::make_chart(m.space());
  const auto path = cc::geodesic_integrate(chart, m.norm(), std::vector<double>{0, 0, 0}, std::vector<double>{0.3, -0.5, 0.8}, 0.3, 60);
  EXPECT_FALSE(path.exited);
  EXPECT_LT(path.max_speed_drift(), 1e-9);
  const auto out = cc::geodesic_integrate(chart, m.norm(), std::vector<double>{0, 0, 0}, std::vector<double>{1, 0, 0}, 2.0, 40);
  EXPECT_TRUE(out.exited);
}

TEST(Localization, FinslerAndGvOperatorsAgreeAlongV) {
  hs::CaseParams p;
  p.id = 6;
  const auto rc = hs::realize_case(p);
  const auto m = rc.ab_metric(std::vector<double>{0.6, 0.5, 1.0, 1.2}, PhiFunction::randers(0.3));
  const auto r = cc::riemannian_localization_check(cc::make_chart(rc.space), m, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.points.size(), 4u);
  EXPECT_LT(r.max_residual, 1e-8);
}

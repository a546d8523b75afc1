#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "homfinsler/homspace/catalog.hpp"
#include "homfinsler/homspace/coset.hpp"
#include "homfinsler/homspace/invariants.hpp"
#include "homfinsler/homspace/sectional.hpp"
#include "homfinsler/homspace/structural.hpp"
#include "oracles.hpp"

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

// Frozen from the Koszul-connection oracle (left_invariant_sectional) on su(2), inner diag(1,2,3).
constexpr double kK12 = -1.0 / 3.0;
constexpr double kK13 = 1.0 / 3.0;
constexpr double kK23 = 1.0 / 3.0;
constexpr double kKGeneric = 0.3053774620227574;  // span((0.3,-0.2,0.5), (0.4,0.1,-0.7))

// Frozen from the finite-difference S-curvature oracle: su(2), inner diag(1,2,3),
// v = X1, randers eps = 0.3, y = (0.3, -0.5, 0.8). The oracle agrees to 4e-12.
constexpr double kSFrozen = 0.14334366218718442;

std::vector<double> realization_blocks(const hs::RealizedCase& rc, double base) {
  std::vector<double> s(rc.block_count());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = base + 0.17 * double(i);
  return s;
}

}  // namespace

TEST(Catalog, HasTenCasesWithExpectedStatus) {
  ASSERT_EQ(hs::catalog().size(), 10u);
  const bool admissible[10] = {true, true, true, true, false, true, true, false, false, false};
  for (int id = 1; id <= 10; ++id) EXPECT_EQ(hs::catalog_case(id).admissible, admissible[id - 1]) << id;
  EXPECT_THROW(hs::catalog_case(11), homfinsler::ConfigError);
}

TEST(Catalog, NormalizationOfCircleWeights) {
  hs::CaseParams p;
  p.id = 6;
  p.k = 2;
  p.l = 2;
  EXPECT_EQ(hs::normalized(p).k, 1);
  EXPECT_EQ(hs::normalized(p).l, 1);
  p.k = -3;
  p.l = -1;
  EXPECT_EQ(hs::normalized(p).k, 3);
  EXPECT_EQ(hs::normalized(p).l, 1);
  p.k = 0;
  p.l = 0;
  EXPECT_THROW(hs::normalized(p), homfinsler::ConfigError);
}

TEST(Catalog, AdmissibilityRules) {
  hs::CaseParams p;
  p.id = 6;
  p.k = 1;
  p.l = 1;
  EXPECT_TRUE(hs::admissibility(p).admissible);
  p.l = -1;
  auto a = hs::admissibility(p);
  EXPECT_FALSE(a.admissible);
  EXPECT_TRUE(a.zero_flag);
  p.k = 2;
  EXPECT_TRUE(hs::admissibility(p).admissible);

  hs::CaseParams q;
  q.id = 7;
  EXPECT_TRUE(hs::admissibility(q).admissible);
  q.torus = {{1, -1, 0}, {0, 1, -1}};  // inside su(3)
  a = hs::admissibility(q);
  EXPECT_FALSE(a.admissible);
  EXPECT_FALSE(a.zero_flag);
  q.torus = {{1, -1, 0}, {0, 0, 1}};  // meets su(3) in the torus of a standard SU(2)
  a = hs::admissibility(q);
  EXPECT_FALSE(a.admissible);
  EXPECT_TRUE(a.zero_flag);
  q.torus = {{1, 1, 1}, {0, 1, 0}};  // contains the center
  EXPECT_FALSE(hs::admissibility(q).admissible);
  q.torus = {{1, 0, 0}, {2, 0, 0}};
  EXPECT_THROW(hs::admissibility(q), homfinsler::ConfigError);

  hs::CaseParams r;
  r.id = 2;
  r.n = 2;
  r.torus = {{1, -2}};  // n x + y = 0: the line lies in su(n+1)
  EXPECT_FALSE(hs::admissibility(r).admissible);
  r.torus = {{1, 1}};  // central
  EXPECT_FALSE(hs::admissibility(r).admissible);
  r.torus = {{1, 0}};
  EXPECT_TRUE(hs::admissibility(r).admissible);

  hs::CaseParams e;
  e.id = 5;
  EXPECT_FALSE(hs::admissibility(e).admissible);
}

TEST(Catalog, RealizedDimensions) {
  struct Row {
    int id;
    int n;
    std::size_t dim;
  };
  for (const auto& r : std::vector<Row>{{1, 1, 3}, {1, 2, 5}, {2, 1, 3}, {3, 1, 7}, {4, 1, 7}, {6, 1, 7}, {7, 1, 7}}) {
    hs::CaseParams p;
    p.id = r.id;
    p.n = r.n;
    const auto rc = hs::realize_case(p);
    EXPECT_EQ(rc.space->dim(), r.dim) << "case " << r.id;
    EXPECT_NEAR(std::sqrt(homfinsler::numkernel::dot<double>(rc.v, rc.v)), 1.0, 1e-14);
  }
  hs::CaseParams x;
  x.id = 6;
  x.l = -1;
  EXPECT_THROW(hs::realize_case(x), homfinsler::StructuralError);
  EXPECT_NO_THROW(hs::realize_case(x, true));
  hs::CaseParams f;
  f.id = 9;
  EXPECT_THROW(hs::realize_case(f, true), homfinsler::NotRealizedError);
}

TEST(Sectional, MatchesKoszulOracleOnSu2) {
  const hs::RiemannianHomMetric m(su2_group(), kDiag123);
  const hs::SectionalCurvatureKit kit(m);
  const std::vector<double> e1 = {1, 0, 0}, e2 = {0, 1, 0}, e3 = {0, 0, 1};
  EXPECT_NEAR(hs::sectional_curvature_hom(m, e1, e2), kK12, 1e-13);
  EXPECT_NEAR(hs::sectional_curvature_hom(m, e1, e3), kK13, 1e-13);
  EXPECT_NEAR(kit.sectional(e2, e3), kK23, 1e-13);
  const std::vector<double> x = {0.3, -0.2, 0.5}, y = {0.4, 0.1, -0.7};
  EXPECT_NEAR(kit.sectional(x, y), kKGeneric, 1e-13);
  EXPECT_NEAR(hs::sectional_curvature_hom(m, x, y), kKGeneric, 1e-13);
}

TEST(Sectional, KitAgreesWithOracleOnRandomLeftInvariantMetrics) {
  const auto g = la::make_su(2);
  const oracle::MatrixAlgebra mg(*g);
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 5; ++trial) {
    oracle::Mat r(3, 3);
    for (long i = 0; i < 9; ++i) r.data()[i] = nd(rng);
    const oracle::Mat a = r * r.transpose() + oracle::Mat::Identity(3, 3);
    DenseMatrix<double> ad(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ad(i, j) = a(i, j);
    const hs::RiemannianHomMetric m(su2_group(), ad);
    std::vector<double> x(3), y(3);
    for (auto& c : x) c = nd(rng);
    for (auto& c : y) c = nd(rng);
    EXPECT_NEAR(hs::sectional_curvature_hom(m, x, y), oracle::left_invariant_sectional(mg, a, oracle::to_eigen(x), oracle::to_eigen(y)),
                1e-11);
  }
}

TEST(Sectional, BiInvariantThreeSphereIsQuarter) {
  const hs::RiemannianHomMetric m(su2_group(), DenseMatrix<double>::identity(3));
  const std::vector<double> x = {0.3, -0.2, 0.5}, y = {0.4, 0.1, -0.7};
  EXPECT_NEAR(hs::sectional_curvature_hom(m, x, y), 0.25, 1e-14);
  const auto pv = hs::min_sectional_through(m, x);
  EXPECT_NEAR(pv.value, 0.25, 1e-14);
}

TEST(Sectional, CommutingPairFormulaAndPrecondition) {
  hs::CaseParams p;
  p.id = 6;
  p.k = 1;
  p.l = -1;
  const auto rc = hs::realize_case(p, true);
  const std::vector<double> s = {1.0, 0.7, 1.3, 0.9};
  const auto m = rc.riemannian(s);
  // v commutes with the e1-e2 root plane for this circle
  const auto plane = rc.blocks[1];
  const auto w = plane.col(0);
  EXPECT_NEAR(hs::commuting_pair_sectional(m, rc.v, w), hs::sectional_curvature_hom(m, rc.v, w), 1e-12);
  const auto w2 = rc.blocks[2].col(0);
  EXPECT_THROW(hs::commuting_pair_sectional(m, rc.v, w2), homfinsler::PreconditionError);
}

TEST(SCurvature, FrozenValueOnSu2) {
  const hs::InvariantABMetric m(su2_group(), kDiag123, {1, 0, 0}, PhiFunction::randers(0.3));
  EXPECT_NEAR(hs::s_curvature_hom(m, std::vector<double>{0.3, -0.5, 0.8}), kSFrozen, 1e-12);
  EXPECT_DOUBLE_EQ(hs::kSCurvatureCalibration, 1.0);
}

TEST(SCurvature, PositivelyHomogeneousOfDegreeOne) {
  const hs::InvariantABMetric m(su2_group(), kDiag123, {0.2, 0.1, -0.3}, PhiFunction::polynomial({1.0, 0.2, 0.3}));
  const std::vector<double> y = {0.3, -0.5, 0.8}, y2 = {0.75, -1.25, 2.0};
  EXPECT_NEAR(hs::s_curvature_hom(m, y2), 2.5 * hs::s_curvature_hom(m, y), 1e-13);
}

TEST(SCurvature, VanishesExactlyWhenKvclHolds) {
  // diag(1,2,2) with v = X1: ad(v) rotates the equal-weight plane, so v is Killing of constant length
  const DenseMatrix<double> a{{1, 0, 0}, {0, 2, 0}, {0, 0, 2}};
  const hs::InvariantABMetric good(su2_group(), a, {1, 0, 0}, PhiFunction::randers(0.4));
  EXPECT_TRUE(hs::kvcl_check(good).pass);
  const auto rg = hs::s_vanishing_equivalence(good, 200);
  EXPECT_TRUE(rg.s_vanishes);
  EXPECT_TRUE(rg.consistent);
  const hs::InvariantABMetric bad(su2_group(), kDiag123, {1, 0, 0}, PhiFunction::randers(0.4));
  const auto kb = hs::kvcl_check(bad);
  EXPECT_FALSE(kb.pass);
  double wmax = 0.0;
  for (double c : kb.witness) wmax = std::max(wmax, std::abs(c));
  EXPECT_NEAR(wmax, 1.0, 1e-14);
  const auto rb = hs::s_vanishing_equivalence(bad, 200);
  EXPECT_FALSE(rb.s_vanishes);
  EXPECT_TRUE(rb.consistent);
  const hs::InvariantABMetric riem(su2_group(), a, {1, 0, 0}, PhiFunction::riemannian());
  EXPECT_THROW(hs::s_vanishing_equivalence(riem, 10), homfinsler::PreconditionError);
}

TEST(Localization, GvIsTheFundamentalTensorAtV) {
  const DenseMatrix<double> a{{1, 0, 0}, {0, 2, 0}, {0, 0, 2}};
  const hs::InvariantABMetric m(su2_group(), a, {0.5, 0, 0}, PhiFunction::randers(0.6));
  const auto gv = hs::localize_gv(m);
  const auto h = homfinsler::minkowski::hessian(m.norm(), m.v());
  EXPECT_LT((gv.inner() - h.g).max_abs_entry(), 1e-13);
  const hs::InvariantABMetric bad(su2_group(), kDiag123, {1, 0, 0}, PhiFunction::randers(0.4));
  EXPECT_THROW(hs::localize_gv(bad), homfinsler::PreconditionError);
}

TEST(Localization, RandersPerturbChecksItsInputs) {
  const DenseMatrix<double> a{{1, 0, 0}, {0, 2, 0}, {0, 0, 2}};
  const hs::RiemannianHomMetric alpha(su2_group(), a);
  const std::vector<double> v = {1, 0, 0};
  const auto f = hs::randers_perturb(alpha, v, 0.3);
  EXPECT_NEAR(f.b(), 1.0, 1e-14);
  EXPECT_THROW(hs::randers_perturb(alpha, v, 1.0), homfinsler::InadmissibleNormError);
  const hs::RiemannianHomMetric bad(su2_group(), kDiag123);
  EXPECT_THROW(hs::randers_perturb(bad, v, 0.1), homfinsler::PreconditionError);
}

TEST(UTensor, IsSymmetric) {
  const hs::RiemannianHomMetric m(su2_group(), kDiag123);
  const std::vector<double> x = {0.3, -0.2, 0.5}, y = {0.4, 0.1, -0.7};
  const auto u1 = hs::u_tensor(m, x, y), u2 = hs::u_tensor(m, y, x);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(u1[i], u2[i], 1e-15);
}

TEST(Structural, AdmissibleCasesPass) {
  for (int id : {1, 3, 6, 7}) {
    hs::CaseParams p;
    p.id = id;
    const auto rc = hs::realize_case(p);
    const auto m = rc.ab_metric(realization_blocks(rc, 0.8), PhiFunction::randers(0.1));
    const auto st = hs::structural_checks(m, 50);
    EXPECT_TRUE(st.rank_ok) << id;
    EXPECT_TRUE(st.closure_ok) << id;
    EXPECT_TRUE(st.ideal_ok) << id;
    EXPECT_TRUE(st.kvcl_ok) << id;
    EXPECT_LT(st.ratio.variance, 1e-8) << id;
    EXPECT_TRUE(st.pass) << id << " " << st.first_failure;
  }
}

TEST(Structural, SubmersionNormIsAMinimumAlongV) {
  hs::CaseParams p;
  p.id = 6;
  const auto rc = hs::realize_case(p);
  const auto m = rc.ab_metric(realization_blocks(rc, 0.8), PhiFunction::randers(0.2));
  const auto k = hs::k_subalgebra(m);
  const auto w = k.p.col(0);
  const double fw = hs::submersion_norm(m, w);
  for (double t : {-0.3, -0.1, 0.1, 0.3}) {
    auto z = w;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += t * m.v()[i];
    EXPECT_LE(fw, homfinsler::minkowski::ab_eval(m.norm(), z) + 1e-12);
  }
  EXPECT_THROW(hs::submersion_norm(m, std::vector<double>(7, 0.0)), homfinsler::DomainError);
}

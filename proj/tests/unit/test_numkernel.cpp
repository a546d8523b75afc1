#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <random>

#include "homfinsler/liealg/lie_algebra.hpp"
#include "homfinsler/numkernel/dense_matrix.hpp"
#include "homfinsler/numkernel/jet.hpp"
#include "homfinsler/numkernel/minimize.hpp"
#include "homfinsler/numkernel/parallel.hpp"
#include "homfinsler/numkernel/structure_constants.hpp"
#include "oracles.hpp"

namespace nk = homfinsler::numkernel;
using J1 = nk::Jet<double>;
using J2 = nk::Jet<J1>;

namespace {

template <typename T>
T test_fn(std::span<const T> v) {
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  using nk::exp;
  using nk::log;
  using nk::sin;
  using nk::sqrt;
  using nk::pow;
  using std::pow;
  return sin(v[0] * v[1]) + exp(v[1]) * log(v[0] + 2.0) / sqrt(v[0] * v[0] + 1.0) + pow(v[1] + 3.0, 1.5);
}

double f2(double a, double b) {
  const double v[2] = {a, b};
  return test_fn<double>(std::span<const double>(v, 2));
}

}  // namespace

TEST(Jet, FirstAndSecondPartialsMatchFiniteDifferences) {
  const double p[2] = {0.3, -0.4};
  const auto j = nk::jet_eval([](std::span<const J1> v) { return test_fn<J1>(v); }, std::span<const double>(p, 2), 2);
  EXPECT_NEAR(j.value(), f2(p[0], p[1]), 1e-15);
  EXPECT_NEAR(j.partial({0}), oracle::richardson([&](double t) { return f2(p[0] + t, p[1]); }, 0.0), 1e-10);
  EXPECT_NEAR(j.partial({1}), oracle::richardson([&](double t) { return f2(p[0], p[1] + t); }, 0.0), 1e-10);
  EXPECT_NEAR(j.partial({0, 1}), oracle::richardson_mixed([&](double t, double s) { return f2(p[0] + t, p[1] + s); }), 1e-8);
  EXPECT_NEAR(j.partial({1, 1}), oracle::richardson_mixed([&](double t, double s) { return f2(p[0], p[1] + t + s); }), 1e-8);
}

TEST(Jet, ThirdOrderPartialOfProductIsExact) {
  // f = x^2 y z: d^3 f / dx dy dz = 2x, d^3 f / dx^2 dy = 2 z
  const double p[3] = {1.5, -2.0, 0.25};
  const auto j = nk::jet_eval([](std::span<const J1> v) { return v[0] * v[0] * v[1] * v[2]; }, std::span<const double>(p, 3), 3);
  EXPECT_DOUBLE_EQ(j.partial({0, 1, 2}), 3.0);
  EXPECT_DOUBLE_EQ(j.partial({0, 0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(j.partial({0, 0}), 2.0 * -2.0 * 0.25);
}

TEST(Jet, NestedJetCarriesInnerDerivatives) {
  // outer variable t, inner variable s; f = sin(t s) at t = 0.5, s = 2
  const auto* outer = nk::JetLayout::get(1, 2);
  const auto* inner = nk::JetLayout::get(1, 1);
  const J2 t = J2::variable(outer, 0, J1(inner, 0.5));
  const J2 s(J1::variable(inner, 0, 2.0));
  const J2 f = nk::sin(t * s);
  // d/dt f = s cos(ts); d/ds of that = cos(ts) - ts sin(ts)
  const J1 dt = f.partial({0});
  EXPECT_NEAR(dt.value(), 2.0 * std::cos(1.0), 1e-15);
  EXPECT_NEAR(dt.partial({0}), std::cos(1.0) - std::sin(1.0), 1e-15);
}

TEST(Jet, DivisionAndReciprocal) {
  const double p[1] = {0.7};
  const auto j = nk::jet_eval([](std::span<const J1> v) { return 1.0 / (v[0] * v[0] + 1.0); }, std::span<const double>(p, 1), 3);
  const double x = 0.7, d = x * x + 1.0;
  EXPECT_NEAR(j.partial({0}), -2.0 * x / (d * d), 1e-15);
  EXPECT_NEAR(j.partial({0, 0}), (6.0 * x * x - 2.0) / (d * d * d), 1e-14);
}

TEST(Jet, RejectsBadRequests) {
  const double p[1] = {1.0};
  EXPECT_THROW(nk::jet_eval([](std::span<const J1> v) { return v[0]; }, std::span<const double>(), 2), homfinsler::DomainError);
  EXPECT_THROW(nk::jet_eval([](std::span<const J1> v) { return v[0]; }, std::span<const double>(p, 1), 4), homfinsler::DomainError);
  EXPECT_THROW(nk::jet_eval([](std::span<const J1> v) { return nk::log(v[0] - 1.0); }, std::span<const double>(p, 1), 1),
               homfinsler::Error);
}

TEST(Jet, AxpyAndZeroTests) {
  const auto* l = nk::JetLayout::get(2, 1);
  J1 a = J1::variable(l, 0, 1.0);
  const J1 b = J1::variable(l, 1, 2.0);
  nk::axpy(a, 3.0, b);
  EXPECT_DOUBLE_EQ(a.value(), 7.0);
  EXPECT_DOUBLE_EQ(a.partial({0}), 1.0);
  EXPECT_DOUBLE_EQ(a.partial({1}), 3.0);
  EXPECT_TRUE(nk::is_zero(J1(l, 0.0)));
  EXPECT_FALSE(nk::is_zero(b));
}

TEST(DenseMatrix, LuSolveInverseDeterminant) {
  const nk::DenseMatrix<double> a{{4, 1, 2}, {1, 5, 3}, {2, 3, 6}};
  const nk::LuDecomposition<double> lu(a);
  EXPECT_NEAR(lu.determinant(), 4 * (30 - 9) - 1 * (6 - 6) + 2 * (3 - 10), 1e-12);
  const std::vector<double> b = {1, 2, 3};
  const auto x = lu.solve(std::span<const double>(b));
  const auto ax = nk::matvec<double, double>(a, std::span<const double>(x));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ax[i], b[i], 1e-13);
  const auto id = a * lu.inverse();
  EXPECT_LT((id - nk::DenseMatrix<double>::identity(3)).max_abs_entry(), 1e-14);
}

TEST(DenseMatrix, SingularSolveThrows) {
  const nk::DenseMatrix<double> a{{1, 2}, {2, 4}};
  EXPECT_THROW((void)nk::LuDecomposition<double>(a).solve(std::vector<double>{1, 1}), homfinsler::SingularityError);
}

TEST(DenseMatrix, EigenNullspaceRank) {
  const nk::DenseMatrix<double> a{{2, 1, 0}, {1, 2, 0}, {0, 0, 5}};
  const auto e = nk::symmetric_eigen(a);
  EXPECT_NEAR(e.values[0], 1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 3.0, 1e-14);
  EXPECT_NEAR(e.values[2], 5.0, 1e-14);
  const nk::DenseMatrix<double> s{{1, 1, 0}, {2, 2, 0}};
  EXPECT_EQ(nk::numerical_rank(s), 1u);
  EXPECT_EQ(nk::nullspace(s).cols(), 2u);
  const auto g = nk::generalized_symmetric_eigen(a, nk::DenseMatrix<double>::diagonal(std::vector<double>{1, 1, 5}));
  EXPECT_NEAR(g.values.back(), 3.0, 1e-13);
  EXPECT_TRUE(nk::is_positive_definite(a));
  EXPECT_FALSE(nk::is_positive_definite(nk::DenseMatrix<double>{{1, 2}, {2, 1}}));
}

TEST(DenseMatrix, OrthonormalizeDropsDependentColumns) {
  const nk::DenseMatrix<double> q{{2, 0}, {0, 3}};
  const nk::DenseMatrix<double> cols{{1, 2, 0}, {1, 2, 1}};
  const auto o = nk::orthonormalize_columns(cols, q);
  ASSERT_EQ(o.cols(), 2u);
  const auto gram = o.transpose() * q * o;
  EXPECT_LT((gram - nk::DenseMatrix<double>::identity(2)).max_abs_entry(), 1e-14);
}

TEST(StructureConstants, BracketMatchesMatrixCommutator) {
  const auto g = homfinsler::liealg::make_su(3);
  const oracle::MatrixAlgebra mg(*g);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  std::vector<double> x(8), y(8);
  for (auto& c : x) c = nd(rng);
  for (auto& c : y) c = nd(rng);
  const auto b = g->structure().bracket<double>(std::span<const double>(x), std::span<const double>(y));
  const auto ref = mg.bracket(oracle::to_eigen(x), oracle::to_eigen(y));
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(b[i], ref(i), 1e-13);
}

TEST(StructureConstants, AdTransportMatchesMatrixExponential) {
  for (const auto& g : {homfinsler::liealg::make_su(2), homfinsler::liealg::make_sp(2), homfinsler::liealg::make_u(3)}) {
    const oracle::MatrixAlgebra mg(*g);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    const std::size_t n = g->dim();
    std::vector<double> x(n), y(n);
    for (auto& c : x) c = 0.2 * nd(rng);
    for (auto& c : y) c = nd(rng);
    const auto t = nk::ad_transport_apply<double>(g->structure(), std::span<const double>(x), std::span<const double>(y));
    const auto ref = oracle::transport_expm(mg, oracle::to_eigen(x), oracle::to_eigen(y));
    const auto m = nk::ad_transport<double>(g->structure(), std::span<const double>(x));
    const auto mt = nk::matvec<double, double>(m, std::span<const double>(y));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(t[i], ref(long(i)), 1e-12) << g->name();
      EXPECT_NEAR(mt[i], t[i], 1e-13) << g->name();
    }
  }
}

TEST(StructureConstants, TransportSeriesDivergesForHugeArguments) {
  const auto g = homfinsler::liealg::make_su(2);
  const std::vector<double> x = {400.0, 0.0, 0.0}, y = {0.0, 1.0, 0.0};
  EXPECT_THROW(nk::ad_transport_apply<double>(g->structure(), std::span<const double>(x), std::span<const double>(y)),
               homfinsler::DivergenceError);
}

TEST(Sampling, HaltonPointsAreInUnitCubeAndSpherePointsAreUnit) {
  const nk::ShiftedHalton h(6, 3);
  for (std::size_t k = 0; k < 100; ++k) {
    const auto u = h.point(k);
    for (double c : u) {
      EXPECT_GE(c, 0.0);
      EXPECT_LT(c, 1.0);
    }
    const auto p = nk::uniform_to_sphere(u, 5);
    EXPECT_NEAR(nk::norm2(p), 1.0, 1e-14);
  }
}

TEST(Minimizer, RayleighQuotientOnSphere) {
  const nk::DenseMatrix<double> a{{3, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 4, 1}, {0, 0, 1, 5}};
  const auto e = nk::symmetric_eigen(a);
  const std::size_t dims[1] = {4};
  const auto m = nk::minimize_on_spheres(
      [&](const std::vector<nk::Vec<double>>& p) { return nk::bilinear<double>(a, p[0], p[0]); }, std::span<const std::size_t>(dims, 1), {});
  EXPECT_NEAR(m.value, e.values[0], 1e-9);
}

TEST(Minimizer, FlagObjectiveReachesPlaneMinimum) {
  // K(y, w) = sum_i lambda_i p_i with p the Pluecker coordinates of the unit plane:
  // min over planes of y^T A y + w^T A w is the sum of the two smallest eigenvalues.
  const nk::DenseMatrix<double> a = nk::DenseMatrix<double>::diagonal(std::vector<double>{0.5, 2.0, 1.0, 3.0});
  const auto m = nk::minimize_over_flags(
      [&](const nk::Flag& f) {
        auto y = f.y, w = f.w;
        const double ny = nk::norm2(y), nw = nk::norm2(w);
        for (auto& c : y) c /= ny;
        for (auto& c : w) c /= nw;
        return nk::bilinear<double>(a, y, y) + nk::bilinear<double>(a, w, w);
      },
      4, {});
  EXPECT_NEAR(m.value, 1.5, 1e-8);
  EXPECT_THROW(nk::minimize_over_flags([](const nk::Flag&) { return 0.0; }, 1, {}), homfinsler::DimensionError);
}

TEST(Minimizer, IsDeterministicForFixedSeed) {
  auto obj = [](std::span<const double> y) {
    return nk::PoleValue{y[0] * y[1] + 0.3 * y[2] * y[2], {0.0, 0.0, 1.0}};
  };
  nk::MinimizerConfig c;
  c.samples = 64;
  const auto a = nk::minimize_over_flagpoles(obj, 3, c);
  const auto b = nk::minimize_over_flagpoles(obj, 3, c);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmin.y, b.argmin.y);
  EXPECT_NEAR(a.value, -0.5, 1e-9);
}

TEST(Parallel, EveryIndexRunsOnce) {
  std::vector<std::atomic<int>> hits(1000);
  nk::parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(nk::parallel_for(10, 2, [](std::size_t i) {
                 if (i == 7) throw homfinsler::DomainError("boom");
               }),
               homfinsler::DomainError);
}

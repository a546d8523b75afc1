#include <gtest/gtest.h>

#include <cmath>

#include "homfinsler/liealg/lie_algebra.hpp"
#include "homfinsler/liealg/structure.hpp"
#include "oracles.hpp"

namespace la = homfinsler::liealg;
using homfinsler::numkernel::DenseMatrix;

TEST(LieAlgebra, DimensionsCentersAndRanks) {
  struct Row {
    la::AlgebraPtr g;
    std::size_t dim;
    std::size_t center;
    int rank;
  };
  const std::vector<Row> rows = {{la::make_su(2), 3, 0, 1}, {la::make_su(3), 8, 0, 2}, {la::make_u(3), 9, 1, 3},
                                 {la::make_sp(1), 3, 0, 1}, {la::make_sp(2), 10, 0, 2}, {la::make_abelian(3), 3, 3, 3}};
  for (const auto& r : rows) {
    EXPECT_EQ(r.g->dim(), r.dim) << r.g->name();
    EXPECT_EQ(r.g->center_dim(), r.center) << r.g->name();
    EXPECT_EQ(la::rank(*r.g), r.rank) << r.g->name();
  }
}

TEST(LieAlgebra, StructureConstantsAreConsistent) {
  for (const auto& g : {la::make_su(3), la::make_u(3), la::make_sp(2), la::direct_sum(*la::make_sp(2), *la::make_abelian(1))}) {
    EXPECT_LT(g->antisymmetry_defect(), 1e-13) << g->name();
    EXPECT_LT(g->jacobi_defect(), 1e-12) << g->name();
    EXPECT_LT(g->invariance_defect(), 1e-12) << g->name();
    EXPECT_LT((g->form() - DenseMatrix<double>::identity(g->dim())).max_abs_entry(), 1e-13) << g->name();
  }
}

TEST(LieAlgebra, ElementCoordinatesRoundTrip) {
  const auto g = la::make_sp(2);
  std::vector<double> x(g->dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(1.0 + double(i));
  const auto back = g->coordinates(g->element(x));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-14);
}

TEST(LieAlgebra, BuildFromSpec) {
  EXPECT_EQ(la::build_algebra({"su", 3, 1})->dim(), 9u);
  EXPECT_EQ(la::build_algebra({"sp", 2, 0})->dim(), 10u);
  EXPECT_THROW(la::build_algebra({"e", 8, 0}), homfinsler::Error);
}

TEST(Subalgebra, ClosureIsEnforced) {
  const auto g = la::make_su(2);
  EXPECT_THROW(la::Subalgebra(g, {{1, 0, 0}, {0, 1, 0}}), homfinsler::StructuralError);
  const la::Subalgebra h(g, {{1, 0, 0}});
  EXPECT_EQ(h.dim(), 1u);
  EXPECT_TRUE(h.contains(std::vector<double>{2, 0, 0}));
  EXPECT_FALSE(h.contains(std::vector<double>{0, 1, 0}));
  EXPECT_LT(h.closure_defect(), 1e-15);
}

TEST(ReductiveSplit, ComplementIsOrthogonalAndInvariant) {
  const auto g = la::make_su(3);
  const la::Subalgebra h(g, {la::diagonal_element(*g, std::vector<double>{1, 1, -2})});
  const auto split = la::reductive_split(g, h);
  EXPECT_EQ(split.dim_m(), 7u);
  EXPECT_EQ(split.dim_h(), 1u);
  const auto inner = split.bi_invariant_on_m();
  EXPECT_TRUE(la::ad_invariance_check(inner, split).pass);
}

TEST(ReductiveSplit, RootPlanesOfAMaximalTorus) {
  const auto g = la::make_su(3);
  const la::Subalgebra h(g, {la::diagonal_element(*g, std::vector<double>{1, -1, 0}),
                            la::diagonal_element(*g, std::vector<double>{1, 1, -2})});
  const auto split = la::reductive_split(g, h);
  const auto d = la::root_plane_decomposition(split);
  // stretching one vector of a root plane breaks Ad(H)-invariance
  auto bad = split.bi_invariant_on_m();
  const auto e = d.planes[0].basis.col(0);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) bad(i, j) += e[i] * e[j];
  EXPECT_FALSE(la::ad_invariance_check(bad, split).pass);
  EXPECT_EQ(d.m0.cols(), 0u);
  ASSERT_EQ(d.planes.size(), 3u);
  EXPECT_EQ(d.planes[0].label, "e1-e2");
  DenseMatrix<double> sum(7 - 1, 7 - 1);
  for (std::size_t i = 0; i <= d.planes.size(); ++i) sum += d.projector(i);
  EXPECT_LT((sum - DenseMatrix<double>::identity(6)).max_abs_entry(), 1e-13);
}

TEST(Structure, RankOfSubalgebraAndMaximalIdeal) {
  const auto g = la::direct_sum(*la::make_su(2), *la::make_abelian(1));
  const la::Subalgebra whole = la::Subalgebra::whole(g);
  EXPECT_EQ(la::rank(whole), 2);
  // the abelian summand is an ideal of g
  const la::Subalgebra k(g, {{0, 0, 0, 1}, {1, 0, 0, 0}});
  EXPECT_EQ(la::maximal_ideal_in(*g, k).cols(), 1u);
}

TEST(Structure, DiagonalElementRoundTrip) {
  const auto g = la::make_u(3);
  const std::vector<double> d = {0.5, -1.0, 2.0};
  const auto x = la::diagonal_element(*g, d);
  const auto back = la::diagonal_of(*g, x);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[i], d[i], 1e-14);
  EXPECT_THROW(la::diagonal_element(*la::make_su(3), d), homfinsler::Error);
}

TEST(Embedding, QuaternionEmbeddingIsMultiplicative) {
  // i * j = k in the real 4x4 embedding of 1x1 quaternion matrices
  auto quat = [](int unit) {
    std::array<DenseMatrix<double>, 4> parts = {DenseMatrix<double>(1, 1), DenseMatrix<double>(1, 1), DenseMatrix<double>(1, 1),
                                                DenseMatrix<double>(1, 1)};
    parts[std::size_t(unit)](0, 0) = 1.0;
    return la::embed_quaternion(parts);
  };
  EXPECT_LT((quat(1) * quat(2) - quat(3)).max_abs_entry(), 1e-15);
  EXPECT_LT((quat(1) * quat(1) + quat(0)).max_abs_entry(), 1e-15);
}

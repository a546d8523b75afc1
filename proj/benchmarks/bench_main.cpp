#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "homfinsler/chartcurv/chart.hpp"
#include "homfinsler/chartcurv/spray.hpp"
#include "homfinsler/chartcurv/volume.hpp"
#include "homfinsler/homspace/catalog.hpp"
#include "homfinsler/homspace/invariants.hpp"
#include "homfinsler/homspace/sectional.hpp"
#include "homfinsler/numkernel/jet.hpp"

namespace cc = homfinsler::chartcurv;
namespace hs = homfinsler::homspace;
namespace nk = homfinsler::numkernel;
using homfinsler::minkowski::PhiFunction;

namespace {

hs::RealizedCase realized(int id, int n = 1) {
  hs::CaseParams p;
  p.id = id;
  p.n = n;
  return hs::realize_case(p);
}

std::vector<double> blocks_for(const hs::RealizedCase& rc) {
  std::vector<double> b(rc.block_count(), 1.0);
  b[0] = 0.6;
  return b;
}

void BM_JetSecondOrder(benchmark::State& state) {
  const double p[4] = {0.3, -0.4, 0.2, 0.7};
  for (auto _ : state) {
    auto j = nk::jet_eval(
        [](std::span<const nk::Jet<double>> v) {
          using nk::sqrt;
          return sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3] + 1.0) * (v[0] + 0.5 * v[3]);
        },
        std::span<const double>(p, 4), 2);
    benchmark::DoNotOptimize(j);
  }
}
BENCHMARK(BM_JetSecondOrder);

void BM_RiemannOp(benchmark::State& state) {
  const auto rc = state.range(0) == 3 ? realized(1, 1) : realized(7);
  const auto m = rc.ab_metric(blocks_for(rc), PhiFunction::randers(0.1));
  const auto chart = cc::make_chart(rc.space);
  std::vector<double> x(m.dim(), 0.05), y(m.dim(), 0.0);
  y[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(cc::riemann_op(chart, m.norm(), x, y));
}
BENCHMARK(BM_RiemannOp)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_SCurvatureChart(benchmark::State& state) {
  const auto rc = realized(1, 1);
  const auto m = rc.ab_metric(blocks_for(rc), PhiFunction::randers(0.1));
  const auto chart = cc::make_chart(rc.space);
  const auto quad = cc::make_sphere_quadrature(m.dim());
  std::vector<double> x{0.1, -0.05, 0.02}, y{0.3, 0.5, -0.8};
  for (auto _ : state) benchmark::DoNotOptimize(cc::s_curvature_chart(chart, m.norm(), quad, x, y));
}
BENCHMARK(BM_SCurvatureChart)->Unit(benchmark::kMillisecond);

void BM_SectionalKit(benchmark::State& state) {
  const auto rc = realized(7);
  const hs::SectionalCurvatureKit kit(rc.riemannian(blocks_for(rc)));
  std::vector<double> x(kit.dim(), 0.0), y(kit.dim(), 0.0);
  x[0] = 1.0;
  y[1] = 0.6;
  y[2] = 0.8;
  for (auto _ : state) benchmark::DoNotOptimize(kit.sectional(x, y));
}
BENCHMARK(BM_SectionalKit);

void BM_MinThrough(benchmark::State& state) {
  const auto rc = realized(7);
  const hs::SectionalCurvatureKit kit(rc.riemannian(blocks_for(rc)));
  std::vector<double> y(kit.dim(), 0.0);
  y[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(kit.min_through(y));
}
BENCHMARK(BM_MinThrough);

}  // namespace

BENCHMARK_MAIN();

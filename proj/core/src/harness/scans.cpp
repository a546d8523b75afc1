#include "homfinsler/harness/scans.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "homfinsler/chartcurv/spray.hpp"
#include "homfinsler/homspace/invariants.hpp"
#include "homfinsler/homspace/sectional.hpp"

namespace homfinsler::harness {

FlagScanResult sectional_scan(const homspace::RiemannianHomMetric& metric, const numkernel::MinimizerConfig& config) {
  const homspace::SectionalCurvatureKit kit(metric);
  auto obj = [&](std::span<const double> y) { return kit.min_through(y); };
  const auto m = numkernel::minimize_over_flagpoles(obj, metric.dim(), config);
  return {m.value, m.argmin.y, m.argmin.w, config.samples, m.evaluations};
}

FlagScanResult finsler_flag_scan(const chartcurv::ChartContext& chart, const minkowski::ABNormData& norm,
                                 const numkernel::MinimizerConfig& config) {
  const std::size_t n = chart.dim();
  const Vec<double> x0(n, 0.0);
  auto obj = [&](std::span<const double> y) { return chartcurv::min_flag_through(chartcurv::riemann_op(chart, norm, x0, y)); };
  const auto m = numkernel::minimize_over_flagpoles(obj, n, config);
  return {m.value, m.argmin.y, m.argmin.w, config.samples, m.evaluations};
}

SScanResult s_curvature_scan(const homspace::InvariantABMetric& metric, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SScanResult r;
  r.samples = samples;
  Vec<double> y(metric.dim());
  for (std::size_t k = 0; k < samples; ++k) {
    for (double& c : y) c = normal(rng);
    const double s = std::abs(homspace::s_curvature_hom(metric, y));
    if (s > r.max_abs || r.worst.empty()) {
      r.max_abs = s;
      r.worst = y;
    }
  }
  return r;
}

ZeroFlagProbe zero_flag_probe(const homspace::RealizedCase& rc, const homspace::InvariantABMetric& metric) {
  ZeroFlagProbe p;
  const auto& split = rc.space->split;
  const auto& v = metric.v();
  const double vn = numkernel::norm2(v);
  if (vn == 0.0) return p;
  for (std::size_t b = 0; b < rc.blocks.size(); ++b) {
    const auto& blk = rc.blocks[b];
    if (blk.cols() != 2 || rc.block_labels[b] == "m0") continue;
    bool commutes = true;
    for (std::size_t c = 0; c < 2 && commutes; ++c) {
      const auto col = blk.col(c);
      const auto br = split.bracket_g(v, std::span<const double>(col));
      commutes = numkernel::norm2(br) <= 1e-10 * vn;
    }
    if (!commutes) continue;
    p.applicable = true;
    p.plane = rc.block_labels[b];
    const auto chart = chartcurv::make_chart(rc.space);
    const Vec<double> x0(metric.dim(), 0.0);
    const auto r = chartcurv::riemann_op(chart, metric.norm(), x0, v);
    std::unique_ptr<homspace::RiemannianHomMetric> gv;
    if (homspace::kvcl_check(metric).pass) gv = std::make_unique<homspace::RiemannianHomMetric>(homspace::localize_gv(metric));
    for (std::size_t c = 0; c < 2; ++c) {
      const auto col = blk.col(c);
      p.chart = std::max(p.chart, std::abs(chartcurv::flag_curvature(r, std::span<const double>(col))));
      if (gv) p.commuting = std::max(p.commuting, std::abs(homspace::commuting_pair_sectional(*gv, v, std::span<const double>(col))));
    }
    p.commuting_done = gv != nullptr;
    break;
  }
  return p;
}

namespace {

std::vector<Vec<double>> fixed_poles(std::size_t n, std::size_t count, std::uint64_t seed) {
  numkernel::ShiftedHalton h(2 * ((n + 1) / 2), seed);
  std::vector<Vec<double>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(numkernel::uniform_to_sphere(h.point(k), n));
  return out;
}

double min_on_poles(const homspace::RealizedCase& rc, std::span<const double> blocks, const std::vector<Vec<double>>& poles) {
  const homspace::SectionalCurvatureKit kit(rc.riemannian(blocks));
  double m = std::numeric_limits<double>::infinity();
  for (const auto& y : poles) m = std::min(m, kit.min_through(y).value);
  return m;
}

}  // namespace

BlockSearch search_blocks(const homspace::RealizedCase& rc, const ScanConfig& scan, std::uint64_t seed) {
  const std::size_t nb = rc.block_count();
  const auto poles = fixed_poles(rc.space->dim(), std::max<std::size_t>(1, scan.search_poles), seed);
  static constexpr double kGrid[] = {0.25, 0.5, 0.75, 1.0, 1.5};
  constexpr std::size_t kGridSize = sizeof(kGrid) / sizeof(kGrid[0]);

  BlockSearch out;
  std::vector<double> best(nb, 1.0);
  double best_val = -std::numeric_limits<double>::infinity();
  std::size_t total = 1;
  for (std::size_t i = 0; i + 1 < nb; ++i) total *= kGridSize;
  std::vector<double> c(nb, 1.0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (std::size_t i = 0; i + 1 < nb; ++i) {
      c[i] = kGrid[r % kGridSize];
      r /= kGridSize;
    }
    const double val = min_on_poles(rc, c, poles);
    ++out.candidates;
    if (val > best_val) {
      best_val = val;
      best = c;
    }
  }
  // compass search on log c_i, i < nb - 1
  double step = 0.2;
  for (int it = 0; it < 24 && step > 1e-3 && nb > 1; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i + 1 < nb; ++i)
      for (double sgn : {1.0, -1.0}) {
        auto cand = best;
        cand[i] *= std::exp(sgn * step);
        const double val = min_on_poles(rc, cand, poles);
        ++out.candidates;
        if (val > best_val) {
          best_val = val;
          best = cand;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  out.blocks = best;
  out.search_min = best_val;
  numkernel::MinimizerConfig mc;
  mc.samples = scan.flag_samples;
  mc.refine_iters = scan.refine_iters;
  mc.tol = scan.tol;
  mc.seed = seed;
  out.scan = sectional_scan(rc.riemannian(best), mc);
  out.found = out.scan.min > 0.0;
  return out;
}

Vec<double> select_v(const homspace::RealizedCase& rc, const MetricConfig& metric) {
  if (metric.v == "m0") return rc.v;
  if (metric.v_coords.size() != rc.space->dim())
    throw ConfigError("metric.v has " + std::to_string(metric.v_coords.size()) + " coordinates, m has dimension " +
                      std::to_string(rc.space->dim()));
  return metric.v_coords;
}

homspace::InvariantABMetric build_metric(const homspace::RealizedCase& rc, std::span<const double> blocks, const MetricConfig& metric) {
  const auto a = rc.inner(blocks);
  auto v = select_v(rc, metric);
  const auto family = minkowski::phi_family_from_string(metric.phi.family);
  if (family == minkowski::PhiFamily::Randers && metric.phi.has_t)
    return homspace::InvariantABMetric(rc.space, a, v, minkowski::PhiFunction::randers(metric.phi.t));
  const double len = std::sqrt(numkernel::bilinear<double>(a, std::span<const double>(v), std::span<const double>(v)));
  if (len == 0.0) throw ConfigError("metric.v is the zero vector");
  for (double& c : v) c /= len;
  switch (family) {
    case minkowski::PhiFamily::Riemannian:
      return homspace::InvariantABMetric(rc.space, a, v, minkowski::PhiFunction::riemannian());
    case minkowski::PhiFamily::Randers:
      return homspace::InvariantABMetric(rc.space, a, v, minkowski::PhiFunction::randers(metric.phi.eps));
    case minkowski::PhiFamily::SqrtQuadratic:
      return homspace::InvariantABMetric(rc.space, a, v, minkowski::PhiFunction::sqrt_quadratic());
    case minkowski::PhiFamily::Polynomial:
      if (metric.phi.coeffs.empty()) throw ConfigError("metric.phi: polynomial family needs coeffs");
      return homspace::InvariantABMetric(rc.space, a, v, minkowski::PhiFunction::polynomial(metric.phi.coeffs));
  }
  throw ConfigError("unhandled phi family");
}

}  // namespace homfinsler::harness

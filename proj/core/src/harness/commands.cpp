#include "homfinsler/harness/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>

#include "homfinsler/chartcurv/riemannian.hpp"
#include "homfinsler/chartcurv/spray.hpp"
#include "homfinsler/chartcurv/volume.hpp"
#include "homfinsler/homspace/invariants.hpp"
#include "homfinsler/homspace/structural.hpp"

namespace homfinsler::harness {

namespace {

using Clock = std::chrono::steady_clock;
using numkernel::DenseMatrix;

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void finish(CurvatureReport& r, Clock::time_point t0) {
  r.timestamp = utc_now();
  r.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string budget_note(std::size_t poles) {
  return "sampled over " + std::to_string(poles) + " flagpoles (each minimized over all planes through it); not a proof";
}

homspace::RealizedCase realize_for(const RunConfig& config, CurvatureReport& r, bool& stop) {
  stop = false;
  r.params = homspace::normalized(config.space);
  const auto& entry = homspace::catalog_case(r.params.id);
  r.space = entry.space;
  const auto adm = homspace::admissibility(r.params);
  r.admissible = adm.admissible;
  r.exclusion = adm.reason;
  r.negative_control = config.negative_control;
  if (!adm.admissible && !(config.negative_control && adm.zero_flag)) {
    r.checks.push_back({"catalog", false, 0.0, adm.reason, {}});
    r.verdict = "rejected by the catalog exclusion: " + adm.reason;
    r.exit_code = kExitStructural;
    stop = true;
    return {};
  }
  if (!adm.admissible) r.checks.push_back({"catalog", false, 0.0, "negative control: " + adm.reason, {}});
  try {
    return homspace::realize_case(r.params, true);
  } catch (const NotRealizedError& e) {
    r.verdict = e.what();
    r.exit_code = kExitStructural;
    stop = true;
    return {};
  }
}

void fill_metric_fields(CurvatureReport& r, const homspace::RealizedCase& rc, const homspace::InvariantABMetric& m) {
  r.block_labels = rc.block_labels;
  r.phi = m.phi().describe();
  r.b = m.b();
  r.v = m.v();
}

/// residual |a - b| relative to |b|, absolute when |b| < 1e-3
double rel_or_abs(double a, double b) {
  const double d = std::abs(a - b);
  return std::abs(b) >= 1e-3 ? d / std::abs(b) : d;
}

// Choose block scalars: from the config, or by search (recorded in the report).
std::vector<double> choose_blocks(const RunConfig& config, const homspace::RealizedCase& rc, CurvatureReport& r) {
  if (!config.metric.blocks.empty()) return config.metric.blocks;
  r.search = search_blocks(rc, config.scan, config.seed);
  return r.search->blocks;
}

}  // namespace

CurvatureReport verify_case(const RunConfig& config) {
  const auto t0 = Clock::now();
  CurvatureReport r;
  r.command = "verify-case";
  r.config = config;
  bool stop = false;
  const auto rc = realize_for(config, r, stop);
  if (stop) {
    finish(r, t0);
    return r;
  }
  r.blocks = choose_blocks(config, rc, r);
  const auto metric = build_metric(rc, r.blocks, config.metric);
  fill_metric_fields(r, rc, metric);

  // structural checks abort the run on failure
  const auto st = homspace::structural_checks(metric, 100, config.seed);
  r.checks.push_back({"rank", st.rank_ok, double(st.rank_g - st.rank_h),
                      "rank g' = " + std::to_string(st.rank_g) + ", rank h' = " + std::to_string(st.rank_h), {}});
  const std::string closure_detail =
      st.closure_ok && st.closure_message.empty() ? "[h + Rv, h + Rv] stays inside h + Rv" : st.closure_message;
  r.checks.push_back({"closure", st.closure_ok, 0.0, closure_detail, {}});
  r.checks.push_back({"ideal", st.ideal_ok, double(st.ideal_dim), "maximal ideal of g inside h + Rv has dim " + std::to_string(st.ideal_dim), {}});
  const auto kv = homspace::kvcl_check(metric, config.tol.kvcl);
  r.checks.push_back({"kvcl", kv.pass, std::max(kv.quadratic_defect, kv.linear_defect),
                      kv.pass ? "v is a Killing field of constant length" : "witness value " + fmt(kv.witness_value), kv.witness});
  const bool ratio_ok = st.kvcl_ok && st.ratio.variance < config.tol.ratio_variance;
  r.checks.push_back({"submersion-ratio", ratio_ok, st.ratio.variance,
                      "mean " + fmt(st.ratio.mean) + " over " + std::to_string(st.ratio.samples) + " samples", {}});
  const bool structural_ok = st.rank_ok && st.closure_ok && st.ideal_ok;
  if (!structural_ok) {
    r.verdict = "structural failure: " + st.first_failure;
    r.exit_code = kExitStructural;
    finish(r, t0);
    return r;
  }

  if (!minkowski::is_riemannian_phi(metric.phi(), std::max(metric.b(), 1e-12), int(metric.dim()))) {
    const auto eq = homspace::s_vanishing_equivalence(metric, config.scan.s_samples, config.seed);
    r.checks.push_back({"s-vanishing-equivalence", eq.consistent, eq.max_abs_s,
                        std::string("S ") + (eq.s_vanishes ? "vanishes" : "does not vanish") + ", KVCL " + (eq.kvcl.pass ? "holds" : "fails"),
                        eq.worst_ray});
  }

  const auto chart = chartcurv::make_chart(rc.space);
  r.flag = finsler_flag_scan(chart, metric.norm(), config.minimizer());
  r.s = s_curvature_scan(metric, config.scan.s_samples, config.seed);
  r.zero_flag = zero_flag_probe(rc, metric);

  const bool flag_pos = r.flag->min > 0.0;
  const bool s_zero = r.s->max_abs < config.tol.s_zero;
  r.checks.push_back({"flag-positive", flag_pos, r.flag->min, budget_note(r.flag->poles), r.flag->y});
  r.checks.push_back({"s-zero", s_zero, r.s->max_abs, "max |S| over " + std::to_string(r.s->samples) + " rays", r.s->worst});
  if (r.zero_flag->applicable) {
    const bool zero = r.zero_flag->chart < config.tol.zero_flag;
    r.checks.push_back({"zero-flag", !zero, r.zero_flag->chart,
                        "flags spanned by v and the " + r.zero_flag->plane + " plane" + (zero ? " have zero curvature" : ""), {}});
  }

  bool all = true;
  for (const auto& c : r.checks) all = all && c.pass;
  r.positive = r.admissible && all;
  if (r.positive) {
    r.verdict = "positive flag curvature and vanishing S-curvature, " + budget_note(r.flag->poles);
    r.exit_code = kExitPass;
  } else {
    std::string failed;
    for (const auto& c : r.checks)
      if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
    r.verdict = "not certified; failing checks: " + failed;
    r.exit_code = kExitCheckFailure;
  }
  finish(r, t0);
  return r;
}

CurvatureReport search_metric(const RunConfig& config) {
  const auto t0 = Clock::now();
  CurvatureReport r;
  r.command = "search-metric";
  r.config = config;
  bool stop = false;
  const auto rc = realize_for(config, r, stop);
  if (stop) {
    finish(r, t0);
    return r;
  }
  RunConfig searched = config;
  searched.metric.blocks.clear();
  r.blocks = choose_blocks(searched, rc, r);
  const auto& sr = *r.search;
  r.checks.push_back({"sectional-positive", sr.found, sr.scan.min, budget_note(sr.scan.poles), sr.scan.y});
  if (!sr.found) {
    r.block_labels = rc.block_labels;
    r.verdict = "no block scalars with positive sampled sectional curvature found within the budget (" +
                std::to_string(sr.candidates) + " candidates); this is not a nonexistence claim";
    r.exit_code = kExitCheckFailure;
    finish(r, t0);
    return r;
  }
  // Randers perturbation F = alpha + t beta, t = eps / |v|
  const auto alpha = rc.riemannian(r.blocks);
  const auto v = select_v(rc, config.metric);
  const double len = std::sqrt(alpha.dot(v, v));
  const double eps = config.metric.phi.has_t ? config.metric.phi.t * len : (config.metric.phi.eps > 0.0 ? config.metric.phi.eps : 0.05);
  const auto metric = homspace::randers_perturb(alpha, v, eps / len);
  fill_metric_fields(r, rc, metric);
  const auto chart = chartcurv::make_chart(rc.space);
  r.flag = finsler_flag_scan(chart, metric.norm(), config.minimizer());
  r.s = s_curvature_scan(metric, config.scan.s_samples, config.seed);
  r.checks.push_back({"flag-positive", r.flag->min > 0.0, r.flag->min, budget_note(r.flag->poles), r.flag->y});
  r.checks.push_back({"s-zero", r.s->max_abs < config.tol.s_zero, r.s->max_abs, "max |S| over " + std::to_string(r.s->samples) + " rays", r.s->worst});
  bool all = true;
  for (const auto& c : r.checks) all = all && c.pass;
  r.positive = r.admissible && all;
  r.exit_code = all ? kExitPass : kExitCheckFailure;
  r.verdict = all ? "found: randers eps = " + fmt(eps) + " keeps positive flag curvature with vanishing S-curvature, " + budget_note(r.flag->poles)
                  : "the randers perturbation lost a check";
  finish(r, t0);
  return r;
}

namespace {

struct Builtin {
  std::string name;
  homspace::CosetPtr space;
  DenseMatrix<double> inner;
  Vec<double> v;
};

Builtin su2(const DenseMatrix<double>& inner, Vec<double> v) {
  auto g = liealg::make_su(2);
  return {"su(2)", homspace::make_coset(g, liealg::Subalgebra::zero(g), "S^3"), inner, std::move(v)};
}

Builtin torus3() {
  auto g = liealg::make_abelian(3);
  return {"R^3", homspace::make_coset(g, liealg::Subalgebra::zero(g), "R^3"), DenseMatrix<double>::diagonal(std::vector<double>{1.0, 2.0, 3.0}),
          {1.0, 0.0, 0.0}};
}

Builtin aloff_wallach(int k, int l, std::vector<double> blocks) {
  homspace::CaseParams p;
  p.id = 6;
  p.k = k;
  p.l = l;
  const auto rc = homspace::realize_case(p, true);
  return {"S_{" + std::to_string(k) + "," + std::to_string(l) + "}", rc.space, rc.inner(blocks), rc.v};
}

Vec<double> normal_vec(std::mt19937_64& rng, std::size_t n, double scale) {
  std::normal_distribution<double> normal;
  Vec<double> x(n);
  for (double& c : x) c = scale * normal(rng);
  return x;
}

Vec<double> chart_point(std::mt19937_64& rng, std::size_t n, double radius) {
  auto x = normal_vec(rng, n, 1.0);
  const double r = radius * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double nx = numkernel::norm2(x);
  for (double& c : x) c *= r / nx;
  return x;
}

Residual s_suite(const Builtin& b, double eps, std::size_t points, std::uint64_t seed, double tol) {
  const homspace::InvariantABMetric m(b.space, b.inner, b.v, minkowski::PhiFunction::randers(eps));
  const auto chart = chartcurv::make_chart(b.space);
  const auto quad = chartcurv::make_sphere_quadrature(b.space->dim());
  std::mt19937_64 rng(seed);
  Residual res{"s-curvature", b.name, 0.0, tol, points, false};
  for (std::size_t k = 0; k < points; ++k) {
    const auto x = chart_point(rng, b.space->dim(), 0.2);
    const auto y = normal_vec(rng, b.space->dim(), 1.0);
    const double sc = chartcurv::s_curvature_chart(chart, m.norm(), quad, x, y);
    const auto u = chart.transport<double>(x, y);
    const double sh = homspace::kSCurvatureCalibration * homspace::s_curvature_hom(m, u);
    res.value = std::max(res.value, rel_or_abs(sc, sh));
  }
  res.pass = res.value < tol;
  return res;
}

Residual localization_suite(const Builtin& b, double eps, std::size_t points, std::uint64_t seed, double tol) {
  const homspace::InvariantABMetric m(b.space, b.inner, b.v, minkowski::PhiFunction::randers(eps));
  const auto chart = chartcurv::make_chart(b.space);
  const auto rep = chartcurv::riemannian_localization_check(chart, m, points, seed, tol);
  return {"localization", b.name, rep.max_residual, tol, rep.points.size(), rep.pass};
}

Residual commuting_suite(const Builtin& b, const DenseMatrix<double>& partners, std::size_t points, std::uint64_t seed, double tol) {
  const homspace::RiemannianHomMetric alpha(b.space, b.inner);
  const auto chart = chartcurv::make_chart(b.space);
  const auto norm = chartcurv::riemannian_norm(b.inner);
  const Vec<double> x0(b.space->dim(), 0.0);
  const auto r = chartcurv::riemann_op(chart, norm, x0, b.v);
  std::mt19937_64 rng(seed);
  Residual res{"commuting-pair", b.name, 0.0, tol, points, false};
  for (std::size_t k = 0; k < points; ++k) {
    const auto c = normal_vec(rng, partners.cols(), 1.0);
    const auto w = numkernel::matvec<double, double>(partners, std::span<const double>(c));
    const double kc = chartcurv::flag_curvature(r, w);
    const double kh = homspace::commuting_pair_sectional(alpha, b.v, w);
    res.value = std::max(res.value, rel_or_abs(kc, kh));
  }
  res.pass = res.value < tol;
  return res;
}

Residual riemannian_suite(const Builtin& b, std::size_t points, std::uint64_t seed, double tol) {
  const auto chart = chartcurv::make_chart(b.space);
  const auto norm = chartcurv::riemannian_norm(b.inner);
  std::mt19937_64 rng(seed);
  Residual res{"riemannian", b.name, 0.0, tol, points, false};
  for (std::size_t k = 0; k < points; ++k) {
    const auto x = chart_point(rng, b.space->dim(), 0.3);
    const auto y = normal_vec(rng, b.space->dim(), 1.0);
    const auto rf = chartcurv::riemann_op(chart, norm, x, y);
    const auto rg = chartcurv::christoffel_riemann_op(chart, b.inner, x, y);
    const double scale = rg.R.max_abs_entry();
    const double d = (rf.R - rg.R).max_abs_entry();
    res.value = std::max(res.value, scale >= 1e-3 ? d / scale : d);
  }
  res.pass = res.value < tol;
  return res;
}

bool enabled(const RunConfig& c, const std::string& suite) {
  for (const auto& s : c.oracles)
    if (s == suite) return true;
  return false;
}

}  // namespace

CurvatureReport crosscheck(const RunConfig& config) {
  const auto t0 = Clock::now();
  CurvatureReport r;
  r.command = "crosscheck";
  r.config = config;
  r.admissible = true;
  const std::size_t pts = std::max<std::size_t>(1, config.scan.oracle_points);
  const double tol = config.tol.oracle;
  const auto s_diag = su2(DenseMatrix<double>::diagonal(std::vector<double>{1.0, 2.0, 3.0}), {1.0, 0.0, 0.0});
  const auto s_bi = su2(DenseMatrix<double>::identity(3), {0.0, 0.0, 1.0});
  const auto flat = torus3();
  const auto aw = aloff_wallach(1, 1, {0.5, 0.5, 1.0, 1.0});
  std::uint64_t seed = config.seed;
  if (enabled(config, "s-curvature")) {
    r.residuals.push_back(s_suite(s_diag, 0.3, pts, seed++, tol));
    r.residuals.push_back(s_suite(flat, 0.3, pts, seed++, tol));
    r.residuals.push_back(s_suite(aw, 0.1, pts, seed++, tol));
  }
  if (enabled(config, "localization")) {
    r.residuals.push_back(localization_suite(s_bi, 0.2, pts, seed++, tol));
    r.residuals.push_back(localization_suite(flat, 0.2, pts, seed++, tol));
    r.residuals.push_back(localization_suite(aw, 0.1, pts, seed++, tol));
  }
  if (enabled(config, "commuting-pair")) {
    // the abelian algebra: every pair commutes; SU(3)/U(1) with U(1) in a standard SU(2): m0 commutes with e1-e2
    r.residuals.push_back(commuting_suite(flat, DenseMatrix<double>::identity(3), pts, seed++, tol));
    homspace::CaseParams p;
    p.id = 6;
    p.k = 1;
    p.l = -1;
    const auto rc = homspace::realize_case(p, true);
    std::size_t plane = 0;
    for (std::size_t i = 0; i < rc.block_labels.size(); ++i)
      if (rc.block_labels[i] == "e1-e2") plane = i;
    Builtin su3u1{"SU(3)/U(1)", rc.space, rc.inner(std::vector<double>{1.0, 0.7, 1.3, 0.9}), rc.v};
    r.residuals.push_back(commuting_suite(su3u1, rc.blocks[plane], pts, seed++, tol));
  }
  if (enabled(config, "riemannian")) {
    r.residuals.push_back(riemannian_suite(s_diag, pts, seed++, 1e-7));
    r.residuals.push_back(riemannian_suite(flat, pts, seed++, 1e-7));
    r.residuals.push_back(riemannian_suite(aw, pts, seed++, 1e-7));
  }
  bool all = true;
  for (const auto& x : r.residuals) all = all && x.pass;
  r.exit_code = all ? kExitPass : kExitCheckFailure;
  r.verdict = all ? "all oracle residuals below tolerance" : "some oracle residuals exceed tolerance";
  finish(r, t0);
  return r;
}

CurvatureReport scan(const RunConfig& config) {
  const auto t0 = Clock::now();
  CurvatureReport r;
  r.command = "scan";
  r.config = config;
  bool stop = false;
  const auto rc = realize_for(config, r, stop);
  if (stop) {
    finish(r, t0);
    return r;
  }
  r.blocks = choose_blocks(config, rc, r);
  const auto metric = build_metric(rc, r.blocks, config.metric);
  fill_metric_fields(r, rc, metric);
  const auto chart = chartcurv::make_chart(rc.space);
  r.flag = finsler_flag_scan(chart, metric.norm(), config.minimizer());
  r.s = s_curvature_scan(metric, config.scan.s_samples, config.seed);
  r.zero_flag = zero_flag_probe(rc, metric);
  r.checks.push_back({"flag-positive", r.flag->min > 0.0, r.flag->min, budget_note(r.flag->poles), r.flag->y});
  r.checks.push_back({"s-zero", r.s->max_abs < config.tol.s_zero, r.s->max_abs, "max |S| over " + std::to_string(r.s->samples) + " rays", r.s->worst});
  const bool all = r.checks[r.checks.size() - 2].pass && r.checks.back().pass;
  r.exit_code = all ? kExitPass : kExitCheckFailure;
  r.verdict = "min flag curvature " + fmt(r.flag->min) + ", max |S| " + fmt(r.s->max_abs) + "; " + budget_note(r.flag->poles);
  finish(r, t0);
  return r;
}

}  // namespace homfinsler::harness

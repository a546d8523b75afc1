#include "homfinsler/homspace/structural.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "homfinsler/homspace/invariants.hpp"

namespace homfinsler::homspace {

namespace {

DenseMatrix<double> p_basis(const InvariantABMetric& metric) {
  const std::size_t n = metric.dim();
  DenseMatrix<double> cols(n, n + 1);
  cols.set_col(0, std::span<const double>(metric.v()));
  for (std::size_t i = 0; i < n; ++i) cols(i, i + 1) = 1.0;
  const auto q = numkernel::orthonormalize_columns(cols, metric.inner());
  DenseMatrix<double> p(n, q.cols() - 1);
  for (std::size_t j = 1; j < q.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) p(i, j - 1) = q(i, j);
  return p;
}

Subalgebra h_plus_v(const InvariantABMetric& metric) {
  const auto& sp = metric.coset();
  std::vector<Vec<double>> span;
  for (std::size_t j = 0; j < sp.split.dim_h(); ++j) span.push_back(sp.split.h_basis.col(j));
  span.push_back(sp.split.to_g(metric.v()));
  return Subalgebra(sp.g, span);
}

}  // namespace

KSubalgebra k_subalgebra(const InvariantABMetric& metric, double tol) {
  const auto kv = kvcl_check(metric);
  if (!kv.pass) throw PreconditionError("k_subalgebra: KVCL fails, so h + R v need not be a subalgebra");
  KSubalgebra out;
  try {
    out.k = h_plus_v(metric);
  } catch (const StructuralError& e) {
    throw StructuralError(std::string("k_subalgebra: h + R v is not closed under the bracket: ") + e.what());
  }
  out.closure_defect = out.k.closure_defect();
  out.p = p_basis(metric);
  const auto& split = metric.coset().split;
  const auto& a = metric.inner();
  const auto& v = metric.v();
  const std::size_t dp = out.p.cols();
  std::vector<Vec<double>> pcols(dp);
  for (std::size_t j = 0; j < dp; ++j) pcols[j] = split.to_g(out.p.col(j));
  for (std::size_t z = 0; z < out.k.dim(); ++z) {
    const auto zg = out.k.vector(z);
    std::vector<Vec<double>> zx(dp);
    for (std::size_t j = 0; j < dp; ++j) {
      zx[j] = split.m_coords<double>(metric.coset().g->bracket(zg, pcols[j]));
      out.p_invariance_defect =
          std::max(out.p_invariance_defect, std::abs(numkernel::bilinear<double>(a, std::span<const double>(zx[j]), std::span<const double>(v))));
    }
    for (std::size_t i = 0; i < dp; ++i)
      for (std::size_t j = 0; j < dp; ++j) {
        const auto pi = out.p.col(i);
        const auto pj = out.p.col(j);
        const double d = numkernel::bilinear<double>(a, std::span<const double>(zx[i]), std::span<const double>(pj)) +
                         numkernel::bilinear<double>(a, std::span<const double>(pi), std::span<const double>(zx[j]));
        out.p_inner_defect = std::max(out.p_inner_defect, std::abs(d));
      }
  }
  out.pass = out.closure_defect <= 1e-12 && out.p_invariance_defect <= tol && out.p_inner_defect <= tol;
  return out;
}

double submersion_norm(const InvariantABMetric& metric, std::span<const double> w) {
  const std::size_t n = metric.dim();
  if (w.size() != n) throw DimensionError("submersion_norm: w has the wrong length");
  const double aw = std::sqrt(numkernel::bilinear<double>(metric.inner(), w, w));
  if (aw == 0.0) throw DomainError("submersion_norm: w = 0");
  const auto& v = metric.v();
  Vec<double> u(n);
  auto f = [&](double t) {
    for (std::size_t i = 0; i < n; ++i) u[i] = w[i] + t * v[i];
    return minkowski::ab_eval(metric.norm(), std::span<const double>(u));
  };
  // F(w + t v) is convex in t; widen until both ends rise
  double r = aw / metric.b();
  int expansions = 0;
  while (f(r) <= f(0.5 * r) || f(-r) <= f(-0.5 * r)) {
    r *= 2.0;
    if (++expansions > 60) throw DivergenceError("submersion_norm: line search found no bracket");
  }
  const auto res = boost::math::tools::brent_find_minima(f, -r, r, std::numeric_limits<double>::digits);
  return res.second;
}

SubmersionRatio submersion_ratio(const InvariantABMetric& metric, std::size_t samples, std::uint64_t seed) {
  SubmersionRatio out;
  out.samples = samples;
  if (samples == 0) return out;
  const auto p = p_basis(metric);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> ratios;
  ratios.reserve(samples);
  Vec<double> c(p.cols());
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& x : c) x = nd(rng);
    const auto w = numkernel::matvec<double, double>(p, std::span<const double>(c));
    const double aw = std::sqrt(numkernel::bilinear<double>(metric.inner(), std::span<const double>(w), std::span<const double>(w)));
    ratios.push_back(submersion_norm(metric, w) / aw);
  }
  out.min = ratios[0];
  out.max = ratios[0];
  for (double r : ratios) {
    out.mean += r;
    out.min = std::min(out.min, r);
    out.max = std::max(out.max, r);
  }
  out.mean /= double(samples);
  for (double r : ratios) out.variance += (r - out.mean) * (r - out.mean);
  out.variance /= double(samples);
  out.pass = out.variance < 1e-8;
  return out;
}

StructuralReport structural_checks(const InvariantABMetric& metric, std::size_t ratio_samples, std::uint64_t seed) {
  StructuralReport r;
  const auto& sp = metric.coset();
  r.rank_g = liealg::rank(*sp.g);
  r.rank_h = sp.h.dim() == 0 ? 0 : liealg::rank(sp.h);
  r.rank_ok = r.rank_g <= r.rank_h + 1;
  r.kvcl_ok = kvcl_check(metric).pass;
  try {
    const auto k = h_plus_v(metric);
    r.closure_ok = true;
    r.ideal_dim = liealg::maximal_ideal_in(*sp.g, k).cols();
    r.ideal_ok = r.ideal_dim <= 1;
  } catch (const StructuralError& e) {
    r.closure_ok = false;
    r.closure_message = e.what();
  }
  r.ratio = submersion_ratio(metric, ratio_samples, seed);
  if (!r.rank_ok)
    r.first_failure = "rank inequality: rank g = " + std::to_string(r.rank_g) + " > rank h + 1 = " + std::to_string(r.rank_h + 1);
  else if (!r.kvcl_ok)
    r.first_failure = "kvcl";
  else if (!r.closure_ok)
    r.first_failure = "closure of h + R v";
  else if (!r.ideal_ok)
    r.first_failure = "maximal ideal of g in h + R v has dimension " + std::to_string(r.ideal_dim);
  else if (!r.ratio.pass)
    r.first_failure = "submersion ratio variance " + std::to_string(r.ratio.variance);
  r.pass = r.first_failure.empty();
  return r;
}

}  // namespace homfinsler::homspace

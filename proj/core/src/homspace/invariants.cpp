#include "homfinsler/homspace/invariants.hpp"

#include <cmath>
#include <random>

#include "homfinsler/homspace/sectional.hpp"

namespace homfinsler::homspace {

namespace {

DenseMatrix<double> ad_v(const CosetSpace& space, std::span<const double> v) {
  const auto vg = space.split.to_g(v);
  return space.split.ad_m(vg);
}

void require_kvcl(const RiemannianHomMetric& alpha, std::span<const double> v, const char* who) {
  const auto r = kvcl_check(alpha, v);
  if (!r.pass)
    throw PreconditionError(std::string(who) + ": v is not a Killing vector of constant length (defect " +
                            std::to_string(std::max(r.quadratic_defect, r.linear_defect)) + ")");
}

}  // namespace

double s_curvature_hom(const InvariantABMetric& metric, std::span<const double> y) {
  const auto& a = metric.inner();
  const auto& v = metric.v();
  if (y.size() != metric.dim()) throw DimensionError("s_curvature_hom: y has the wrong length");
  const double a2 = numkernel::bilinear<double>(a, y, y);
  if (a2 <= 0.0) throw DomainError("s_curvature_hom: y = 0");
  const double al = std::sqrt(a2);
  const double b = metric.b();
  const double beta = numkernel::bilinear<double>(a, std::span<const double>(v), y);
  const double s = beta / al;
  const auto vy = metric.coset().split.bracket_m(std::span<const double>(v), y);
  const double vyy = numkernel::bilinear<double>(a, std::span<const double>(vy), y);
  const double vyv = numkernel::bilinear<double>(a, std::span<const double>(vy), std::span<const double>(v));
  const auto q = minkowski::q_delta_phi(metric.phi(), s, b, static_cast<int>(metric.dim()));
  return -kSCurvatureCalibration / al * q.Phi / (2.0 * q.Delta * q.Delta) * (-vyy - al * q.Q * vyv);
}

KvclResult kvcl_check(const RiemannianHomMetric& alpha, std::span<const double> v, double tol) {
  const std::size_t n = alpha.dim();
  if (v.size() != n) throw DimensionError("kvcl_check: v has the wrong length");
  const auto& a = alpha.inner();
  const auto ad = ad_v(alpha.coset(), v);
  const auto aad = a * ad;
  DenseMatrix<double> sym = aad + aad.transpose();
  sym *= 0.5;
  Vec<double> lin(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) lin[j] += v[i] * aad(i, j);

  KvclResult r;
  r.quadratic_defect = sym.max_abs_entry();
  for (double c : lin) r.linear_defect = std::max(r.linear_defect, std::abs(c));
  r.pass = r.quadratic_defect <= tol && r.linear_defect <= tol;
  if (r.pass) return r;

  auto scale_max = [](Vec<double>& w) {
    double m = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::abs(w[i]) > m) {
        m = std::abs(w[i]);
        arg = i;
      }
    const double f = (w[arg] < 0.0 ? -1.0 : 1.0) / m;
    for (double& c : w) c *= f;
  };
  if (r.quadratic_defect > tol) {
    const auto eig = numkernel::symmetric_eigen(sym);
    std::size_t top = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(eig.values[i]) > std::abs(eig.values[top])) top = i;
    r.witness = eig.vectors.col(top);
    scale_max(r.witness);
    r.witness_value = numkernel::bilinear<double>(sym, std::span<const double>(r.witness), std::span<const double>(r.witness));
  } else {
    r.witness = lin;
    scale_max(r.witness);
    r.witness_value = numkernel::dot<double>(std::span<const double>(lin), std::span<const double>(r.witness));
  }
  return r;
}

KvclResult kvcl_check(const InvariantABMetric& metric, double tol) {
  return kvcl_check(metric.alpha(), std::span<const double>(metric.v()), tol);
}

SVanishingReport s_vanishing_equivalence(const InvariantABMetric& metric, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = metric.dim();
  if (minkowski::is_riemannian_phi(metric.phi(), metric.b(), static_cast<int>(n)))
    throw PreconditionError("s_vanishing_equivalence: phi is Riemannian (Phi vanishes identically)");
  SVanishingReport rep;
  rep.samples = samples;
  rep.kvcl = kvcl_check(metric);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Vec<double> y(n);
  for (std::size_t k = 0; k < samples; ++k) {
    for (double& c : y) c = nd(rng);
    const double al = std::sqrt(numkernel::bilinear<double>(metric.inner(), std::span<const double>(y), std::span<const double>(y)));
    for (double& c : y) c /= al;
    const double s = std::abs(s_curvature_hom(metric, y));
    if (s > rep.max_abs_s || rep.worst_ray.empty()) {
      rep.max_abs_s = s;
      rep.worst_ray = y;
    }
  }
  rep.s_vanishes = rep.max_abs_s < 1e-8;
  rep.consistent = rep.s_vanishes == rep.kvcl.pass;
  return rep;
}

Vec<double> u_tensor(const RiemannianHomMetric& metric, std::span<const double> u1, std::span<const double> u2) {
  const std::size_t n = metric.dim();
  if (u1.size() != n || u2.size() != n) throw DimensionError("u_tensor: vectors have the wrong length");
  const auto& split = metric.coset().split;
  Vec<double> rhs(n, 0.0), e(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1.0;
    const auto b1 = split.bracket_m(std::span<const double>(e), u1);
    const auto b2 = split.bracket_m(std::span<const double>(e), u2);
    rhs[k] = 0.5 * (metric.dot(b1, u2) + metric.dot(b2, u1));
    e[k] = 0.0;
  }
  return numkernel::solve(metric.inner(), rhs);
}

double commuting_pair_sectional(const RiemannianHomMetric& metric, std::span<const double> v1, std::span<const double> v1p) {
  const auto z = metric.coset().split.bracket_g(v1, v1p);
  for (double c : z)
    if (std::abs(c) > 1e-12) throw PreconditionError("commuting_pair_sectional: the vectors do not commute");
  const auto uxy = u_tensor(metric, v1, v1p);
  const auto uxx = u_tensor(metric, v1, v1);
  const auto uyy = u_tensor(metric, v1p, v1p);
  const double xx = metric.dot(v1, v1), yy = metric.dot(v1p, v1p), xy = metric.dot(v1, v1p);
  const double area = xx * yy - xy * xy;
  if (area <= 1e-24 * xx * yy) throw DomainError("commuting_pair_sectional: vectors are parallel");
  return (metric.dot(uxy, uxy) - metric.dot(uxx, uyy)) / area;
}

double sectional_curvature_hom(const RiemannianHomMetric& metric, std::span<const double> x, std::span<const double> y) {
  return SectionalCurvatureKit(metric).sectional(x, y);
}

DenseMatrix<double> sectional_numerator_form(const RiemannianHomMetric& metric, std::span<const double> y) {
  return SectionalCurvatureKit(metric).numerator_form(y);
}

numkernel::PoleValue min_sectional_through(const RiemannianHomMetric& metric, std::span<const double> y) {
  return SectionalCurvatureKit(metric).min_through(y);
}

RiemannianHomMetric localize_gv(const InvariantABMetric& metric) {
  require_kvcl(metric.alpha(), metric.v(), "localize_gv");
  const auto ft = minkowski::hessian(metric.norm(), std::span<const double>(metric.v()));
  return RiemannianHomMetric(metric.space(), ft.g);
}

InvariantABMetric randers_perturb(const RiemannianHomMetric& alpha, std::span<const double> v, double t) {
  require_kvcl(alpha, v, "randers_perturb");
  return InvariantABMetric(alpha.space(), alpha.inner(), Vec<double>(v.begin(), v.end()), PhiFunction::randers(t));
}

}  // namespace homfinsler::homspace

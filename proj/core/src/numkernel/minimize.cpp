#include "homfinsler/numkernel/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "homfinsler/numkernel/parallel.hpp"

namespace homfinsler::numkernel {

namespace {

std::vector<int> first_primes(std::size_t count) {
  std::vector<int> primes;
  for (int c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::size_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index) {
    r += f * static_cast<double>(index % static_cast<std::size_t>(base));
    index /= static_cast<std::size_t>(base);
    f *= inv;
  }
  return r;
}

using Point = std::vector<Vec<double>>;

void normalize(Vec<double>& v) {
  const double n = norm2(v);
  for (auto& x : v) x /= n;
}

double safe_eval(const std::function<double(const Point&)>& f, const Point& p) {
  const double v = f(p);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

ShiftedHalton::ShiftedHalton(std::size_t dim, std::uint64_t seed) : shift_(dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& s : shift_) s = u(rng);
}

std::vector<double> ShiftedHalton::point(std::size_t index) const {
  static const std::vector<int> primes = first_primes(256);
  if (dim() > primes.size()) throw DimensionError("ShiftedHalton: dimension too large");
  std::vector<double> p(dim());
  for (std::size_t d = 0; d < dim(); ++d) {
    double x = radical_inverse(index + 1, primes[d]) + shift_[d];
    p[d] = x - std::floor(x);
  }
  return p;
}

std::vector<double> uniform_to_sphere(std::span<const double> u, std::size_t d) {
  if (u.size() < 2 * ((d + 1) / 2)) throw DimensionError("uniform_to_sphere: not enough uniforms");
  std::vector<double> z(d);
  for (std::size_t i = 0; i < d; i += 2) {
    const double u1 = std::max(u[i], 1e-300);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u[i + 1];
    z[i] = r * std::cos(th);
    if (i + 1 < d) z[i + 1] = r * std::sin(th);
  }
  double n = norm2(z);
  if (n < 1e-300) {
    z.assign(d, 0.0);
    z[0] = 1.0;
    return z;
  }
  for (auto& x : z) x /= n;
  return z;
}

SphereMinimum minimize_on_spheres(const std::function<double(const Point&)>& objective, std::span<const std::size_t> dims,
                                  const MinimizerConfig& config, std::span<const Point> seeds) {
  std::size_t uniforms = 0;
  for (auto d : dims) {
    if (d == 0) throw DimensionError("minimize_on_spheres: zero-dimensional factor");
    uniforms += 2 * ((d + 1) / 2);
  }
  ShiftedHalton halton(uniforms, config.seed);

  std::vector<Point> points;
  points.reserve(seeds.size() + config.samples);
  for (const auto& s : seeds) {
    Point p = s;
    for (auto& v : p) normalize(v);
    points.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < config.samples; ++i) {
    auto u = halton.point(i);
    Point p;
    std::size_t off = 0;
    for (auto d : dims) {
      const std::size_t m = 2 * ((d + 1) / 2);
      p.push_back(uniform_to_sphere(std::span<const double>(u.data() + off, m), d));
      off += m;
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw DomainError("minimize_on_spheres: no sample points");

  std::vector<double> values(points.size());
  parallel_for(points.size(), config.threads, [&](std::size_t i) { values[i] = safe_eval(objective, points[i]); });
  std::size_t evaluations = points.size();

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  SphereMinimum best{values[order[0]], points[order[0]], 0};
  const double hmin = std::sqrt(std::max(config.tol, 1e-24));
  const std::size_t starts = std::min(config.refine_starts, order.size());

  for (std::size_t s = 0; s < starts && config.refine_iters > 0; ++s) {
    Point cur = points[order[s]];
    double fcur = values[order[s]];
    double h = 0.25;
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    for (std::size_t f = 0; f < dims.size(); ++f)
      for (std::size_t c = 0; c < dims[f]; ++c) moves.emplace_back(f, c);
    std::vector<Point> cand(2 * moves.size());
    std::vector<double> cval(cand.size());
    for (int it = 0; it < config.refine_iters && h >= hmin; ++it) {
      for (std::size_t m = 0; m < moves.size(); ++m)
        for (int sgn = 0; sgn < 2; ++sgn) {
          Point p = cur;
          auto [f, c] = moves[m];
          p[f][c] += sgn ? -h : h;
          normalize(p[f]);
          cand[2 * m + static_cast<std::size_t>(sgn)] = std::move(p);
        }
      parallel_for(cand.size(), config.threads, [&](std::size_t i) { cval[i] = safe_eval(objective, cand[i]); });
      evaluations += cand.size();
      std::size_t arg = 0;
      for (std::size_t i = 1; i < cand.size(); ++i)
        if (cval[i] < cval[arg]) arg = i;
      if (cval[arg] < fcur) {
        fcur = cval[arg];
        cur = cand[arg];
      } else {
        h *= 0.5;
      }
    }
    if (fcur < best.value) {
      best.value = fcur;
      best.argmin = cur;
    }
  }
  best.evaluations = evaluations;
  return best;
}

namespace {

bool make_edge(const Vec<double>& y, Vec<double>& w) {
  const double c = std::inner_product(y.begin(), y.end(), w.begin(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * y[i];
  const double n = norm2(w);
  if (n < 1e-8) return false;
  for (auto& x : w) x /= n;
  return true;
}

}  // namespace

FlagMinimum minimize_over_flags(const std::function<double(const Flag&)>& objective, std::size_t n,
                                const MinimizerConfig& config, std::span<const Flag> seeds) {
  if (n < 2) throw DimensionError("minimize_over_flags: no 2-planes exist for n < 2");
  auto wrapped = [&](const Point& p) {
    Flag f{p[0], p[1]};
    if (!make_edge(f.y, f.w)) return std::numeric_limits<double>::infinity();
    return objective(f);
  };
  std::vector<Point> pts;
  for (const auto& f : seeds) pts.push_back({f.y, f.w});
  const std::size_t dims[2] = {n, n};
  auto r = minimize_on_spheres(wrapped, dims, config, pts);
  FlagMinimum out;
  out.value = r.value;
  out.argmin = {r.argmin[0], r.argmin[1]};
  make_edge(out.argmin.y, out.argmin.w);
  out.evaluations = r.evaluations;
  return out;
}

FlagMinimum minimize_over_flagpoles(const std::function<PoleValue(std::span<const double>)>& objective, std::size_t n,
                                    const MinimizerConfig& config, std::span<const Vec<double>> seeds) {
  if (n < 2) throw DimensionError("minimize_over_flagpoles: no 2-planes exist for n < 2");
  auto wrapped = [&](const Point& p) { return objective(p[0]).value; };
  std::vector<Point> pts;
  for (const auto& y : seeds) pts.push_back({y});
  const std::size_t dims[1] = {n};
  auto r = minimize_on_spheres(wrapped, dims, config, pts);
  FlagMinimum out;
  out.argmin.y = r.argmin[0];
  auto pv = objective(out.argmin.y);
  out.value = pv.value;
  out.argmin.w = pv.w;
  out.evaluations = r.evaluations + 1;
  return out;
}

}  // namespace homfinsler::numkernel

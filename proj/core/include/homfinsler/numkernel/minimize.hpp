#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "homfinsler/numkernel/dense_matrix.hpp"

namespace homfinsler::numkernel {

struct MinimizerConfig {
  std::size_t samples = 512;
  int refine_iters = 200;
  double tol = 1e-10;
  std::uint64_t seed = 20240601;
  /// Number of best samples handed to the refinement stage.
  std::size_t refine_starts = 4;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Halton points with a Cranley-Patterson shift drawn from the seed.
class ShiftedHalton {
 public:
  ShiftedHalton(std::size_t dim, std::uint64_t seed);
  std::size_t dim() const { return shift_.size(); }
  /// Point number `index` (index 0 is skipped internally).
  std::vector<double> point(std::size_t index) const;

 private:
  std::vector<double> shift_;
};

/// Map 2*ceil(d/2) uniforms to a uniformly distributed point on S^{d-1}.
std::vector<double> uniform_to_sphere(std::span<const double> u, std::size_t d);

/// A flag: flagpole y and a transverse edge w spanning the 2-plane with y.
struct Flag {
  Vec<double> y;
  Vec<double> w;
};

struct FlagMinimum {
  double value = 0.0;
  Flag argmin;
  std::size_t evaluations = 0;
};

struct SphereMinimum {
  double value = 0.0;
  std::vector<Vec<double>> argmin;
  std::size_t evaluations = 0;
};

/// Minimize a smooth function on a product of unit spheres S^{d_0-1} x ... x S^{d_r-1}.
/// `seeds` are extra starting points evaluated before the quasi-random sample.
SphereMinimum minimize_on_spheres(const std::function<double(const std::vector<Vec<double>>&)>& objective,
                                  std::span<const std::size_t> dims, const MinimizerConfig& config,
                                  std::span<const std::vector<Vec<double>>> seeds = {});

/// Minimize an objective over flags (y, w) in R^n. The edge handed to the
/// objective is Euclidean-orthogonal to y. Throws DimensionError for n < 2.
FlagMinimum minimize_over_flags(const std::function<double(const Flag&)>& objective, std::size_t n,
                                const MinimizerConfig& config, std::span<const Flag> seeds = {});

/// Flagpole reduction: `objective(y)` returns the minimum over planes through y
/// together with the minimizing edge. The outer search runs over y only.
struct PoleValue {
  double value;
  Vec<double> w;
};
FlagMinimum minimize_over_flagpoles(const std::function<PoleValue(std::span<const double>)>& objective, std::size_t n,
                                    const MinimizerConfig& config, std::span<const Vec<double>> seeds = {});

}  // namespace homfinsler::numkernel

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homfinsler/homspace/catalog.hpp"
#include "homfinsler/numkernel/minimize.hpp"

namespace homfinsler::harness {

struct PhiConfig {
  std::string family = "randers";  // riemannian | randers | sqrt-quadratic | polynomial
  /// Randers parameter for the alpha-unit fixed direction: F = alpha + eps <v/|v|, .>.
  double eps = 0.0;
  /// Randers parameter on the raw direction: F = alpha + t <v, .>. Used when has_t.
  double t = 0.0;
  bool has_t = false;
  std::vector<double> coeffs;  // polynomial family

  bool operator==(const PhiConfig&) const = default;
};

struct MetricConfig {
  /// One positive scalar per block of m; empty means "search".
  std::vector<double> blocks;
  /// "m0" takes the fixed direction of the realization; "coords" uses v_coords.
  std::string v = "m0";
  std::vector<double> v_coords;
  PhiConfig phi;

  bool operator==(const MetricConfig&) const = default;
};

struct ScanConfig {
  std::size_t flag_samples = 2000;   // flagpoles, each minimized over all planes through it
  int refine_iters = 200;
  double tol = 1e-10;
  std::size_t s_samples = 500;       // rays for the S-curvature scan
  std::size_t search_poles = 200;    // poles per candidate during the block-scalar search
  std::size_t oracle_points = 20;    // points per cross-check suite

  bool operator==(const ScanConfig&) const = default;
};

struct Tolerances {
  double s_zero = 1e-8;
  double kvcl = 1e-10;
  double ratio_variance = 1e-8;
  double oracle = 1e-6;
  double zero_flag = 1e-6;

  bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
  homspace::CaseParams space;
  MetricConfig metric;
  ScanConfig scan;
  Tolerances tol;
  /// Cross-check suites: s-curvature, localization, commuting-pair, riemannian.
  std::vector<std::string> oracles = {"s-curvature", "localization", "commuting-pair", "riemannian"};
  std::uint64_t seed = 20240601;
  /// Lets verify-case run a zero-flag excluded member; such runs never claim positivity.
  bool negative_control = false;
  std::string output;

  numkernel::MinimizerConfig minimizer() const;
  bool operator==(const RunConfig&) const = default;
};

RunConfig default_config();

/// Stable field order; parse(to_json(c)) == c.
std::string to_json(const RunConfig& config, int indent = 2);
/// Throws ConfigError on malformed input. Missing fields keep their defaults.
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace homfinsler::harness

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homfinsler/chartcurv/chart.hpp"
#include "homfinsler/harness/config.hpp"
#include "homfinsler/homspace/catalog.hpp"
#include "homfinsler/numkernel/minimize.hpp"

namespace homfinsler::harness {

using numkernel::Vec;

struct FlagScanResult {
  double min = 0.0;
  Vec<double> y;  // flagpole of the minimizing flag
  Vec<double> w;  // transverse edge
  std::size_t poles = 0;
  std::size_t evaluations = 0;
};

/// Minimum sectional curvature at the origin of a Riemannian invariant metric.
FlagScanResult sectional_scan(const homspace::RiemannianHomMetric& metric, const numkernel::MinimizerConfig& config);

/// Minimum flag curvature at the origin (chart pipeline). Each pole is minimized
/// exactly over the planes through it.
FlagScanResult finsler_flag_scan(const chartcurv::ChartContext& chart, const minkowski::ABNormData& norm,
                                 const numkernel::MinimizerConfig& config);

struct SScanResult {
  double max_abs = 0.0;
  Vec<double> worst;
  std::size_t samples = 0;
};

/// max |S| of the closed-form homogeneous S-curvature over random rays.
SScanResult s_curvature_scan(const homspace::InvariantABMetric& metric, std::size_t samples, std::uint64_t seed);

struct ZeroFlagProbe {
  bool applicable = false;  // some root plane commutes with v
  std::string plane;
  double chart = 0.0;       // max |K^F(v, v ^ w)| over the plane basis, chart pipeline
  double commuting = 0.0;   // same through the U-tensor formula for g_V
  bool commuting_done = false;
};

/// Flags spanned by v and a vector of a root plane commuting with v.
ZeroFlagProbe zero_flag_probe(const homspace::RealizedCase& rc, const homspace::InvariantABMetric& metric);

struct BlockSearch {
  bool found = false;
  std::vector<double> blocks;
  double search_min = 0.0;  // on the fixed pole set used for the search
  FlagScanResult scan;      // full scan of the winner
  std::size_t candidates = 0;
};

/// Grid over block scalars (last block fixed to 1) followed by compass refinement
/// in log coordinates, maximizing the minimum sectional curvature on a fixed pole set.
BlockSearch search_blocks(const homspace::RealizedCase& rc, const ScanConfig& scan, std::uint64_t seed);

/// The fixed direction selected by the config: the realization's v or explicit coordinates.
Vec<double> select_v(const homspace::RealizedCase& rc, const MetricConfig& metric);

/// Invariant (alpha, beta)-metric described by the config on a realized case.
homspace::InvariantABMetric build_metric(const homspace::RealizedCase& rc, std::span<const double> blocks, const MetricConfig& metric);

}  // namespace homfinsler::harness

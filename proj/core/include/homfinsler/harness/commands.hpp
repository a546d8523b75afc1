#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homfinsler/harness/config.hpp"
#include "homfinsler/harness/scans.hpp"

namespace homfinsler::harness {

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitStructural = 2 };

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string detail;
  Vec<double> witness;
};

struct Residual {
  std::string suite;
  std::string space;
  double value = 0.0;
  double tol = 0.0;
  std::size_t points = 0;
  bool pass = false;
};

struct CurvatureReport {
  std::string command;
  homspace::CaseParams params;
  std::string space;
  bool admissible = false;
  std::string exclusion;
  bool negative_control = false;

  std::vector<double> blocks;
  std::vector<std::string> block_labels;
  std::optional<BlockSearch> search;
  std::string phi;
  double b = 0.0;
  Vec<double> v;

  std::vector<Check> checks;
  std::optional<FlagScanResult> flag;
  std::optional<SScanResult> s;
  std::optional<ZeroFlagProbe> zero_flag;
  std::vector<Residual> residuals;

  bool positive = false;  // sampled positivity with vanishing S, never set for excluded members
  std::string verdict;
  int exit_code = kExitPass;

  std::string timestamp;
  double wall_seconds = 0.0;
  RunConfig config;
};

/// Timing lives under the "timestamp" key only, so runs with equal configs
/// produce identical documents after dropping that key.
std::string report_json(const CurvatureReport& report, int indent = 2);
std::string report_text(const CurvatureReport& report);

std::string catalog_json(int indent = 2);
std::string catalog_text();

/// Structural checks, KVCL, S-vanishing equivalence, submersion ratio, flag scan and
/// S scan for one case. Searches block scalars when the config gives none.
CurvatureReport verify_case(const RunConfig& config);

/// Block-scalar search for positive sectional curvature, then the Randers
/// perturbation with t = eps / |v| checked by the chart flag scan.
CurvatureReport search_metric(const RunConfig& config);

/// Oracle suites on the built-in spaces: su(2), an abelian R^3 and S_{1,1}
/// (plus SU(3)/U(1) for commuting pairs).
CurvatureReport crosscheck(const RunConfig& config);

/// Flag-curvature and S-curvature scans of the configured metric only.
CurvatureReport scan(const RunConfig& config);

}  // namespace homfinsler::harness

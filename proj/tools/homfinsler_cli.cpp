#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "homfinsler/harness/commands.hpp"

namespace hh = homfinsler::harness;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  bool json = false;
  std::string out;
  std::optional<int> case_id;
  std::optional<int> n, k, l;
  std::optional<double> eps;
  bool negative_control = false;
};

void add_common(CLI::App* cmd, Options& o, bool space_flags) {
  cmd->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--samples", o.samples, "flag samples (points per suite for crosscheck)");
  cmd->add_flag("--json", o.json, "emit the JSON report instead of text");
  cmd->add_option("--out", o.out, "write the report to this path");
  if (space_flags) {
    cmd->add_option("--case", o.case_id, "catalog case id");
    cmd->add_option("--n", o.n, "n for cases 1-4");
    cmd->add_option("--k", o.k, "k for case 6");
    cmd->add_option("--l", o.l, "l for case 6");
    cmd->add_option("--eps", o.eps, "randers parameter for the unit fixed direction");
    cmd->add_flag("--negative-control", o.negative_control, "run a zero-flag excluded member");
  }
}

hh::RunConfig make_config(const Options& o, bool crosscheck) {
  hh::RunConfig c = o.config_path.empty() ? hh::default_config() : hh::load_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.samples) {
    if (crosscheck)
      c.scan.oracle_points = *o.samples;
    else
      c.scan.flag_samples = *o.samples;
  }
  if (o.case_id) c.space.id = *o.case_id;
  if (o.n) c.space.n = *o.n;
  if (o.k) c.space.k = *o.k;
  if (o.l) c.space.l = *o.l;
  if (o.eps) {
    c.metric.phi.family = "randers";
    c.metric.phi.eps = *o.eps;
    c.metric.phi.has_t = false;
    c.metric.phi.t = 0.0;
  }
  if (o.negative_control) c.negative_control = true;
  if (!o.out.empty()) c.output = o.out;
  return c;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw homfinsler::ConfigError("cannot write '" + path + "'");
  f << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for invariant (alpha,beta)-metrics on compact homogeneous spaces"};
  app.require_subcommand(1);
  Options o;
  auto* cat = app.add_subcommand("catalog", "list the catalog of coset spaces");
  cat->add_flag("--json", o.json, "emit JSON");
  cat->add_option("--out", o.out, "write to this path");
  auto* verify = app.add_subcommand("verify-case", "structural, KVCL, flag-curvature and S-curvature checks for one case");
  add_common(verify, o, true);
  auto* search = app.add_subcommand("search-metric", "search block scalars for positive curvature, then perturb");
  add_common(search, o, true);
  auto* cross = app.add_subcommand("crosscheck", "oracle residual table on the built-in spaces");
  add_common(cross, o, false);
  auto* sc = app.add_subcommand("scan", "flag-curvature and S-curvature scans of the configured metric");
  add_common(sc, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hh::kExitStructural;
  }

  try {
    if (cat->parsed()) {
      emit(o.json ? hh::catalog_json() : hh::catalog_text(), o.out);
      return 0;
    }
    const bool is_cross = cross->parsed();
    const auto config = make_config(o, is_cross);
    hh::CurvatureReport report;
    if (verify->parsed())
      report = hh::verify_case(config);
    else if (search->parsed())
      report = hh::search_metric(config);
    else if (is_cross)
      report = hh::crosscheck(config);
    else
      report = hh::scan(config);
    emit(o.json ? hh::report_json(report) : hh::report_text(report), config.output);
    return report.exit_code;
  } catch (const homfinsler::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hh::kExitStructural;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hh::kExitStructural;
  }
}

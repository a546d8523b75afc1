#include "homfinsler/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace homfinsler::harness {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

numkernel::MinimizerConfig RunConfig::minimizer() const {
  numkernel::MinimizerConfig m;
  m.samples = scan.flag_samples;
  m.refine_iters = scan.refine_iters;
  m.tol = scan.tol;
  m.seed = seed;
  return m;
}

RunConfig default_config() {
  RunConfig c;
  c.space.id = 6;
  c.metric.phi.family = "randers";
  c.metric.phi.eps = 0.05;
  return c;
}

std::string to_json(const RunConfig& c, int indent) {
  json j;
  json space;
  space["family"] = c.space.id;
  space["n"] = c.space.n;
  space["k"] = c.space.k;
  space["l"] = c.space.l;
  space["torus"] = c.space.torus;
  j["space"] = space;

  json phi;
  phi["family"] = c.metric.phi.family;
  if (c.metric.phi.has_t)
    phi["t"] = c.metric.phi.t;
  else
    phi["eps"] = c.metric.phi.eps;
  if (!c.metric.phi.coeffs.empty()) phi["coeffs"] = c.metric.phi.coeffs;
  json metric;
  metric["blocks"] = c.metric.blocks;
  if (c.metric.v == "coords")
    metric["v"] = c.metric.v_coords;
  else
    metric["v"] = c.metric.v;
  metric["phi"] = phi;
  j["metric"] = metric;

  json scan;
  scan["flag_samples"] = c.scan.flag_samples;
  scan["refine_iters"] = c.scan.refine_iters;
  scan["tol"] = c.scan.tol;
  scan["s_samples"] = c.scan.s_samples;
  scan["search_poles"] = c.scan.search_poles;
  scan["oracle_points"] = c.scan.oracle_points;
  j["scan"] = scan;

  json tol;
  tol["s_zero"] = c.tol.s_zero;
  tol["kvcl"] = c.tol.kvcl;
  tol["ratio_variance"] = c.tol.ratio_variance;
  tol["oracle"] = c.tol.oracle;
  tol["zero_flag"] = c.tol.zero_flag;
  j["tolerances"] = tol;

  j["oracle"] = json{{"enable", c.oracles}};
  j["seed"] = c.seed;
  j["negative_control"] = c.negative_control;
  j["output"] = c.output;
  return j.dump(indent);
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c = default_config();
  reject_unknown(j, {"space", "metric", "scan", "tolerances", "oracle", "seed", "negative_control", "output"}, "config");
  if (j.contains("space")) {
    const auto& s = j["space"];
    reject_unknown(s, {"family", "n", "k", "l", "torus"}, "space");
    read(s, "family", c.space.id, "space");
    read(s, "n", c.space.n, "space");
    read(s, "k", c.space.k, "space");
    read(s, "l", c.space.l, "space");
    read(s, "torus", c.space.torus, "space");
  }
  if (j.contains("metric")) {
    const auto& m = j["metric"];
    reject_unknown(m, {"blocks", "v", "phi"}, "metric");
    read(m, "blocks", c.metric.blocks, "metric");
    if (m.contains("v")) {
      const auto& v = m["v"];
      if (v.is_string()) {
        if (v.get<std::string>() != "m0") throw ConfigError("metric.v must be \"m0\" or a coordinate array");
        c.metric.v = "m0";
        c.metric.v_coords.clear();
      } else {
        read(m, "v", c.metric.v_coords, "metric");
        c.metric.v = "coords";
      }
    }
    if (m.contains("phi")) {
      const auto& p = m["phi"];
      reject_unknown(p, {"family", "eps", "t", "coeffs"}, "metric.phi");
      read(p, "family", c.metric.phi.family, "metric.phi");
      if (p.contains("eps") && p.contains("t")) throw ConfigError("metric.phi: give eps or t, not both");
      c.metric.phi.has_t = p.contains("t");
      if (c.metric.phi.has_t) {
        read(p, "t", c.metric.phi.t, "metric.phi");
        c.metric.phi.eps = 0.0;
      } else {
        read(p, "eps", c.metric.phi.eps, "metric.phi");
        c.metric.phi.t = 0.0;
      }
      read(p, "coeffs", c.metric.phi.coeffs, "metric.phi");
      minkowski::phi_family_from_string(c.metric.phi.family);  // validates the name
    }
  }
  if (j.contains("scan")) {
    const auto& s = j["scan"];
    reject_unknown(s, {"flag_samples", "refine_iters", "tol", "s_samples", "search_poles", "oracle_points"}, "scan");
    read(s, "flag_samples", c.scan.flag_samples, "scan");
    read(s, "refine_iters", c.scan.refine_iters, "scan");
    read(s, "tol", c.scan.tol, "scan");
    read(s, "s_samples", c.scan.s_samples, "scan");
    read(s, "search_poles", c.scan.search_poles, "scan");
    read(s, "oracle_points", c.scan.oracle_points, "scan");
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    reject_unknown(t, {"s_zero", "kvcl", "ratio_variance", "oracle", "zero_flag"}, "tolerances");
    read(t, "s_zero", c.tol.s_zero, "tolerances");
    read(t, "kvcl", c.tol.kvcl, "tolerances");
    read(t, "ratio_variance", c.tol.ratio_variance, "tolerances");
    read(t, "oracle", c.tol.oracle, "tolerances");
    read(t, "zero_flag", c.tol.zero_flag, "tolerances");
  }
  if (j.contains("oracle")) {
    const auto& o = j["oracle"];
    reject_unknown(o, {"enable"}, "oracle");
    read(o, "enable", c.oracles, "oracle");
    static const std::set<std::string> suites = {"s-curvature", "localization", "commuting-pair", "riemannian"};
    for (const auto& name : c.oracles)
      if (!suites.count(name)) throw ConfigError("unknown oracle suite '" + name + "'");
  }
  read(j, "seed", c.seed, "config");
  read(j, "negative_control", c.negative_control, "config");
  read(j, "output", c.output, "config");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

}  // namespace homfinsler::harness

#include <iomanip>
#include <sstream>

#include "homfinsler/harness/commands.hpp"
#include "json.hpp"

namespace homfinsler::harness {

namespace {

using json = nlohmann::ordered_json;

json flag_json(const FlagScanResult& f) {
  json j;
  j["min"] = f.min;
  j["flagpole"] = f.y;
  j["edge"] = f.w;
  j["poles"] = f.poles;
  j["evaluations"] = f.evaluations;
  return j;
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string vec(const Vec<double>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << std::setprecision(4) << v[i];
  os << ")";
  return os.str();
}

}  // namespace

std::string report_json(const CurvatureReport& r, int indent) {
  json j;
  j["command"] = r.command;
  if (r.command != "crosscheck") {
    json c;
    c["id"] = r.params.id;
    c["n"] = r.params.n;
    c["k"] = r.params.k;
    c["l"] = r.params.l;
    c["torus"] = r.params.torus;
    c["space"] = r.space;
    c["admissible"] = r.admissible;
    c["exclusion"] = r.exclusion;
    c["negative_control"] = r.negative_control;
    j["case"] = c;
    json m;
    m["blocks"] = r.blocks;
    m["block_labels"] = r.block_labels;
    m["phi"] = r.phi;
    m["b"] = r.b;
    m["v"] = r.v;
    j["metric"] = m;
  }
  if (r.search) {
    json s;
    s["found"] = r.search->found;
    s["blocks"] = r.search->blocks;
    s["search_min"] = r.search->search_min;
    s["candidates"] = r.search->candidates;
    s["scan"] = flag_json(r.search->scan);
    j["search"] = s;
  }
  json checks = json::array();
  for (const auto& c : r.checks) {
    json x;
    x["name"] = c.name;
    x["pass"] = c.pass;
    x["value"] = c.value;
    x["detail"] = c.detail;
    x["witness"] = c.witness;
    checks.push_back(x);
  }
  j["checks"] = checks;
  if (r.flag) j["flag_curvature"] = flag_json(*r.flag);
  if (r.s) {
    json s;
    s["max_abs"] = r.s->max_abs;
    s["worst_ray"] = r.s->worst;
    s["samples"] = r.s->samples;
    j["s_curvature"] = s;
  }
  if (r.zero_flag) {
    json z;
    z["applicable"] = r.zero_flag->applicable;
    z["plane"] = r.zero_flag->plane;
    z["chart"] = r.zero_flag->chart;
    z["commuting_pair"] = r.zero_flag->commuting_done ? json(r.zero_flag->commuting) : json(nullptr);
    j["zero_flag"] = z;
  }
  json res = json::array();
  for (const auto& x : r.residuals) {
    json e;
    e["suite"] = x.suite;
    e["space"] = x.space;
    e["residual"] = x.value;
    e["tol"] = x.tol;
    e["points"] = x.points;
    e["pass"] = x.pass;
    res.push_back(e);
  }
  j["residuals"] = res;
  j["positive"] = r.positive;
  j["verdict"] = r.verdict;
  j["exit_code"] = r.exit_code;
  j["config"] = json::parse(to_json(r.config));
  j["timestamp"] = json{{"utc", r.timestamp}, {"wall_seconds", r.wall_seconds}};
  return j.dump(indent);
}

std::string report_text(const CurvatureReport& r) {
  std::ostringstream os;
  os << r.command;
  if (r.command != "crosscheck") {
    os << ": case " << r.params.id << " (" << r.space << ")";
    if (r.params.id == 6) os << " k=" << r.params.k << " l=" << r.params.l;
    if (r.params.id != 6 && r.params.id != 7) os << " n=" << r.params.n;
    os << (r.admissible ? "" : " [excluded]") << "\n";
    if (!r.blocks.empty()) {
      os << "  blocks:";
      for (std::size_t i = 0; i < r.blocks.size(); ++i)
        os << " " << (i < r.block_labels.size() ? r.block_labels[i] : "?") << "=" << num(r.blocks[i]);
      os << "\n  phi: " << r.phi << ", b = " << num(r.b) << "\n";
    }
  } else {
    os << "\n";
  }
  if (r.search)
    os << "  search: " << (r.search->found ? "found" : "not found") << " after " << r.search->candidates
       << " candidates, min sectional " << num(r.search->scan.min) << "\n";
  for (const auto& c : r.checks)
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": " << num(c.value) << "  " << c.detail << "\n";
  if (r.flag) os << "  min flag curvature " << num(r.flag->min) << " at flagpole " << vec(r.flag->y) << "\n";
  if (r.s) os << "  max |S| " << num(r.s->max_abs) << " over " << r.s->samples << " rays\n";
  if (r.zero_flag && r.zero_flag->applicable)
    os << "  zero-flag probe (" << r.zero_flag->plane << "): chart " << num(r.zero_flag->chart)
       << (r.zero_flag->commuting_done ? ", commuting pair " + num(r.zero_flag->commuting) : std::string()) << "\n";
  for (const auto& x : r.residuals)
    os << "  [" << (x.pass ? "PASS" : "FAIL") << "] " << std::left << std::setw(15) << x.suite << std::setw(12) << x.space << num(x.value)
       << " (tol " << num(x.tol) << ", " << x.points << " points)\n";
  os << "verdict: " << r.verdict << "\n";
  return os.str();
}

std::string catalog_json(int indent) {
  json j;
  json rows = json::array();
  int families = 0;
  for (const auto& c : homspace::catalog()) {
    json x;
    x["id"] = c.id;
    x["g"] = c.g;
    x["k"] = c.k;
    x["h"] = c.h;
    x["space"] = c.space;
    x["admissible"] = c.admissible;
    x["constructible"] = c.constructible;
    x["condition"] = c.condition;
    x["exclusion"] = c.exclusion;
    rows.push_back(x);
    families += c.admissible ? 1 : 0;
  }
  j["cases"] = rows;
  j["admissible_families"] = families;
  return j.dump(indent);
}

std::string catalog_text() {
  std::ostringstream os;
  for (const auto& c : homspace::catalog()) {
    os << std::setw(3) << c.id << "  " << (c.admissible ? "admissible" : "excluded  ") << "  " << c.g << " / " << c.h << "  "
       << c.space << "\n";
    if (c.admissible) os << "       condition: " << c.condition << "\n";
    if (!c.exclusion.empty()) os << "       exclusion: " << c.exclusion << "\n";
  }
  return os.str();
}

}  // namespace homfinsler::harness

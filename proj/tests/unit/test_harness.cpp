#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "homfinsler/harness/commands.hpp"
#include "homfinsler/harness/config.hpp"
#include "homfinsler/harness/scans.hpp"

namespace hh = homfinsler::harness;
using nlohmann::json;

namespace {

hh::RunConfig small_config() {
  auto c = hh::default_config();
  c.scan.flag_samples = 40;
  c.scan.refine_iters = 20;
  c.scan.s_samples = 50;
  c.scan.search_poles = 20;
  c.scan.oracle_points = 3;
  return c;
}

json without_timestamp(const std::string& text) {
  auto j = json::parse(text);
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  auto c = hh::default_config();
  c.space.id = 7;
  c.space.torus = {{1, 1, -2}, {0, 1, 0}};
  c.metric.blocks = {1.0, 0.4, 1.0, 1.0};
  c.metric.v = "coords";
  c.metric.v_coords = {1, 0, 0, 0, 0, 0, 0};
  c.metric.phi.family = "polynomial";
  c.metric.phi.coeffs = {1.0, 0.2, 0.3};
  c.scan.flag_samples = 123;
  c.tol.oracle = 1e-7;
  c.oracles = {"riemannian"};
  c.seed = 99;
  c.negative_control = true;
  EXPECT_EQ(hh::config_from_json(hh::to_json(c)), c);
  auto r = hh::default_config();
  r.metric.phi.has_t = true;
  r.metric.phi.t = 0.02;
  r.metric.phi.eps = 0.0;  // t replaces eps
  EXPECT_EQ(hh::config_from_json(hh::to_json(r)), r);
}

TEST(Config, PartialDocumentsKeepDefaults) {
  const auto c = hh::config_from_json(R"({"space": {"family": 1, "n": 2}, "seed": 5})");
  EXPECT_EQ(c.space.id, 1);
  EXPECT_EQ(c.space.n, 2);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.scan, hh::ScanConfig{});
}

TEST(Config, MalformedInputIsRejected) {
  EXPECT_THROW(hh::config_from_json("{"), homfinsler::ConfigError);
  EXPECT_THROW(hh::config_from_json(R"({"spaec": {}})"), homfinsler::ConfigError);
  EXPECT_THROW(hh::config_from_json(R"({"metric": {"phi": {"family": "kropina"}}})"), homfinsler::ConfigError);
  EXPECT_THROW(hh::config_from_json(R"({"scan": {"flag_samples": "many"}})"), homfinsler::ConfigError);
  EXPECT_THROW(hh::load_config("/nonexistent/config.json"), homfinsler::ConfigError);
}

TEST(Config, LoadFromFile) {
  const std::string path = testing::TempDir() + "homfinsler_cfg.json";
  auto c = hh::default_config();
  c.space.id = 3;
  {
    std::ofstream f(path);
    f << hh::to_json(c);
  }
  EXPECT_EQ(hh::load_config(path), c);
  std::remove(path.c_str());
}

TEST(Catalog, JsonListsEveryCase) {
  const auto j = json::parse(hh::catalog_json());
  ASSERT_TRUE(j.contains("cases"));
  EXPECT_EQ(j["cases"].size(), 10u);
  EXPECT_NE(hh::catalog_text().find("S_{k,l}"), std::string::npos);
}

TEST(Commands, ExcludedCaseExitsStructural) {
  auto c = small_config();
  c.space.id = 6;
  c.space.k = 1;
  c.space.l = -1;
  const auto r = hh::verify_case(c);
  EXPECT_EQ(r.exit_code, hh::kExitStructural);
  EXPECT_FALSE(r.admissible);
  EXPECT_FALSE(r.positive);
  c.space.id = 8;
  EXPECT_EQ(hh::verify_case(c).exit_code, hh::kExitStructural);
}

TEST(Commands, NegativeControlFindsTheZeroFlag) {
  auto c = small_config();
  c.space.id = 6;
  c.space.k = 1;
  c.space.l = -1;
  c.metric.blocks = {0.5, 1.0, 0.55, 1.0};
  c.metric.phi.eps = 0.1;
  c.negative_control = true;
  const auto r = hh::verify_case(c);
  EXPECT_EQ(r.exit_code, hh::kExitCheckFailure);
  ASSERT_TRUE(r.zero_flag.has_value());
  EXPECT_TRUE(r.zero_flag->applicable);
  EXPECT_LT(r.zero_flag->chart, 1e-6);
  EXPECT_LT(r.zero_flag->commuting, 1e-6);
  EXPECT_FALSE(r.positive);
}

TEST(Commands, SearchMetricOnTheThreeSphere) {
  auto c = small_config();
  c.space.id = 1;
  c.space.n = 1;
  const auto r = hh::search_metric(c);
  EXPECT_EQ(r.exit_code, hh::kExitPass);
  EXPECT_TRUE(r.positive);
  ASSERT_TRUE(r.flag.has_value());
  EXPECT_GT(r.flag->min, 0.0);
  const auto a = without_timestamp(hh::report_json(r));
  const auto b = without_timestamp(hh::report_json(hh::search_metric(c)));
  EXPECT_EQ(a, b);
  EXPECT_NE(hh::report_text(r).find("verdict"), std::string::npos);
}

TEST(Commands, CrosscheckResidualsAreSmall) {
  auto c = small_config();
  c.oracles = {"s-curvature", "riemannian"};
  const auto r = hh::crosscheck(c);
  EXPECT_EQ(r.exit_code, hh::kExitPass);
  EXPECT_FALSE(r.residuals.empty());
  for (const auto& res : r.residuals) EXPECT_TRUE(res.pass) << res.suite << " " << res.space;
}

TEST(Commands, ScanReportsBothScans) {
  auto c = small_config();
  c.space.id = 1;
  c.space.n = 1;
  c.metric.blocks = {1.0, 1.0};
  const auto r = hh::scan(c);
  ASSERT_TRUE(r.flag.has_value());
  ASSERT_TRUE(r.s.has_value());
  EXPECT_NEAR(r.flag->min, 0.25, 1e-8);
  EXPECT_LT(r.s->max_abs, 1e-12);
}

TEST(Scans, SelectVFromCoordinates) {
  hh::MetricConfig m;
  homfinsler::homspace::CaseParams p;
  p.id = 1;
  const auto rc = homfinsler::homspace::realize_case(p);
  EXPECT_EQ(hh::select_v(rc, m), rc.v);
  m.v = "coords";
  m.v_coords = {0.0, 2.0, 0.0};
  EXPECT_EQ(hh::select_v(rc, m), m.v_coords);
  m.v_coords = {1.0};
  EXPECT_THROW(hh::select_v(rc, m), homfinsler::Error);
}

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bohr/experiment.hpp"

using namespace bohr;
using doctest::Approx;

namespace {

ExperimentConfig radius_config() {
  ExperimentConfig c;
  c.command = "radius";
  c.alpha_grid = "0.5";
  return c;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("non-finite numbers") {
  CHECK(number(1.5) == Json(1.5));
  CHECK(number(INFINITY) == Json("inf"));
  CHECK(std::isinf(number_from(Json("-inf"))));
  CHECK(std::isnan(number_from(number(NAN))));
  CHECK_THROWS(number_from(Json("abc")));
}

TEST_CASE("config validation and hashing") {
  auto c = radius_config();
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.domain = "lp:x:2";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.command = "plot";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.mode = "r3";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  auto moved = c;
  moved.output = "/tmp/elsewhere.json";
  CHECK(config_hash(moved) == config_hash(c));
  moved.seed = 2;
  CHECK(config_hash(moved) != config_hash(c));
  CHECK(config_hash(c).size() == 16);
}

TEST_CASE("record json round trip") {
  const auto rec = run(radius_config());
  CHECK(rec.passed);
  const auto back = record_from_json(Json::parse(to_json(rec).dump()));
  CHECK(back == rec);
  CHECK(config_from_json(to_json(rec.config)) == rec.config);
}

TEST_CASE("mobius radius record") {
  const auto rec = run(radius_config());
  const auto& it = rec.payload["items"][0];
  CHECK(number_from(it["radius_lo"]) <= 0.5);
  CHECK(number_from(it["radius_hi"]) >= 0.5 - 1e-6);
  const auto csv = lines(emit_table({rec}, TableFormat::Csv));
  REQUIRE(csv.size() == 2);
  CHECK(csv[0] == "experiment_id,n,p,target,mode,radius_lo,radius_hi,witness,seed,margin");
  CHECK(csv[1].find("\"disk:0,0,1\"") != std::string::npos);
  CHECK(csv[1].find("0.49999904632568359") != std::string::npos);
}

TEST_CASE("tables") {
  CHECK(lines(emit_table({}, TableFormat::Csv)).size() == 1);
  auto c = radius_config();
  c.command = "independence";
  c.alpha_grid = "geometric:40";
  c.targets = {"disk:0,0,1", "halfplane:1,0,-1,0", "strip:0,0,1,0,1"};
  const auto rec = run(c);
  CHECK(number_from(rec.payload["spread"]) <= 5e-3);
  const auto csv = lines(emit_table({rec}, TableFormat::Csv));
  REQUIRE(csv.size() == 5);
  CHECK(csv[4].rfind("# max_pairwise_delta,", 0) == 0);
  const auto text = lines(emit_table({rec}, TableFormat::Text));
  CHECK(text.size() == 5);
  CHECK(text[0].rfind("experiment_id", 0) == 0);
  CHECK_THROWS_AS(emit_table({rec, run(radius_config())}, TableFormat::Csv), std::invalid_argument);
}

TEST_CASE("determinism of seeded payloads") {
  ExperimentConfig c;
  c.command = "probe";
  c.domain = "lp:1:2";
  c.mode = "r2";
  c.count = 40;
  c.seed = 99;
  const auto a = run(c);
  const auto b = run(c);
  CHECK(a.payload.dump() == b.payload.dump());
  CHECK(a.passed);
  c.seed = 100;
  CHECK(run(c).payload.dump() != a.payload.dump());
}

TEST_CASE("command corridors") {
  ExperimentConfig c;
  c.command = "sweep";
  c.family = "witness-l1";
  c.domain = "lp:1:2";
  c.mode = "r2";
  c.alpha_grid = "geometric:40";
  const auto w = run(c);
  CHECK(w.passed);
  CHECK(w.payload["items"][0]["corridor"]["passed"].get<bool>());

  ExperimentConfig ax;
  ax.command = "axioms";
  ax.domain = "lp:1:2";
  ax.mode = "r2";
  ax.count = 20;
  ax.seed = 7;
  CHECK(run(ax).passed);

  ExperimentConfig vb;
  vb.command = "verify-bounds";
  vb.count = 30;
  vb.alpha_grid = "geometric:30";
  vb.domain = "lp:1:2";
  vb.targets = {"disk:0,0,1", "halfplane:1,0,-1,0", "strip:0,0,1,0,1"};
  const auto v = run(vb);
  CHECK(v.passed);
  CHECK(v.payload["items"].size() == 5);

  ExperimentConfig probe;
  probe.command = "probe";
  probe.radius = 0.9;
  probe.probe_degree = 40;
  probe.count = 30;
  probe.contraction = 0.999;
  CHECK_FALSE(run(probe).passed);
}

TEST_CASE("persistence is append-only") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bohrlab-test-results";
  fs::remove_all(dir);
  const auto rec = run(radius_config());
  const auto p1 = persist(rec, dir);
  const auto p2 = persist(rec, dir);
  CHECK(p1.filename() == "run-0001.json");
  CHECK(p2.filename() == "run-0002.json");
  CHECK(p1.parent_path().filename() == config_hash(rec.config));
  std::ifstream in(p2);
  CHECK(record_from_json(Json::parse(in)) == rec);
  fs::remove_all(dir);
}

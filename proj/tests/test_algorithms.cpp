#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gmoea/algorithms.hpp"

using namespace gmoea;

namespace {

RunConfig tiny_gmoea_config() {
  RunConfig cfg;
  cfg.algorithm = "GMOEA";
  cfg.problem = "IMF1";
  cfg.D = 4;
  cfg.N = 16;
  cfg.budget = 96;
  cfg.seed = 5;
  cfg.gan.epochs = 5;  // keep the unit test quick; defaults are exercised in acceptance
  cfg.gan.batch = 8;
  return cfg;
}

RunRecord synthetic_record(double igd_val, double hv_val) {
  RunRecord rec;
  rec.config.problem = "IMF1";
  rec.config.D = 30;
  rec.config.budget = 100;
  rec.snapshots.push_back({100, igd_val, hv_val});
  return rec;
}

}  // namespace

TEST_CASE("algorithm tags and file-safe slugs") {
  CHECK(kAlgorithmTags == std::vector<std::string>{"GMOEA", "SPEA2", "GMOEA*", "GMOEA-"});
  for (const auto& tag : kAlgorithmTags) CHECK(is_known_algorithm(tag));
  CHECK_FALSE(is_known_algorithm("NSGA2"));
  CHECK(algorithm_slug("GMOEA") == "GMOEA");
  CHECK(algorithm_slug("SPEA2") == "SPEA2");
  CHECK(algorithm_slug("GMOEA*") == "GMOEA_star");
  CHECK(algorithm_slug("GMOEA-") == "GMOEA_minus");
}

TEST_CASE("config resolution: presets, ablation shares, validation") {
  RunConfig cfg;
  cfg.problem = "IMF1";
  cfg.D = 30;
  cfg.resolve();
  CHECK(cfg.N == 100);
  CHECK(cfg.budget == 5000);
  CHECK(cfg.trace_cadence == 100);

  RunConfig tri;
  tri.problem = "IMF4";
  tri.D = 50;
  tri.resolve();
  CHECK(tri.N == 105);
  CHECK(tri.budget == 10000);

  RunConfig star;
  star.algorithm = "GMOEA*";
  star.var.gan_share = 0.9;  // forced back to the ablation value
  star.resolve();
  CHECK(star.var.gan_share == 0.0);
  RunConfig minus;
  minus.algorithm = "GMOEA-";
  minus.resolve();
  CHECK(minus.var.gan_share == 1.0);

  RunConfig bad;
  bad.algorithm = "NSGA2";
  CHECK_THROWS_AS(bad.resolve(), ConfigError);
  RunConfig bad2;
  bad2.problem = "IMF99";
  CHECK_THROWS_AS(bad2.resolve(), LookupError);
  RunConfig bad3;
  bad3.D = 31;  // no budget preset; must be set explicitly
  CHECK_THROWS_AS(bad3.resolve(), LookupError);
  bad3.D = 31;
  bad3.budget = 4000;
  bad3.resolve();  // explicit budget unblocks non-preset dimensions
  CHECK(bad3.budget == 4000);
  RunConfig bad4;
  bad4.N = 50;
  bad4.budget = 30;
  CHECK_THROWS_AS(bad4.resolve(), ConfigError);
  RunConfig bad5;
  bad5.var.gan_share = 1.5;
  CHECK_THROWS_AS(bad5.resolve(), ConfigError);
}

TEST_CASE("baseline run: budget accounting, snapshots, final population") {
  RunConfig cfg;
  cfg.algorithm = "SPEA2";
  cfg.problem = "IMF1";
  cfg.D = 5;
  cfg.N = 20;
  cfg.budget = 200;
  cfg.seed = 3;
  RunRecord rec = run_algorithm(cfg);

  CHECK(rec.seed == 3);
  CHECK(rec.fe_used <= 200);
  CHECK(200 - rec.fe_used < 20);
  CHECK(rec.fe_used == 200);  // 20 init + 9 generations of 20

  REQUIRE(!rec.snapshots.empty());
  CHECK(rec.snapshots.front().fe == 20);
  CHECK(rec.snapshots.back().fe == rec.fe_used);
  for (std::size_t i = 1; i < rec.snapshots.size(); ++i)
    CHECK(rec.snapshots[i].fe > rec.snapshots[i - 1].fe);
  for (const auto& s : rec.snapshots) {
    CHECK(std::isfinite(s.igd));
    CHECK(s.igd >= 0.0);
    CHECK(std::isfinite(s.hv));
    CHECK(s.hv >= 0.0);
  }

  REQUIRE(rec.final_objectives.size() == 20);
  REQUIRE(rec.final_decisions.size() == 20);
  for (const auto& x : rec.final_decisions) {
    REQUIRE(x.size() == 5);
    CHECK(x[0] >= 0.0);
    CHECK(x[0] <= 1.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
      CHECK(x[i] >= 0.0);
      CHECK(x[i] <= 10.0);
    }
  }
  CHECK(rec.losses.empty());  // baseline never trains a GAN
}

TEST_CASE("snapshot cadence thins the trace but keeps the endpoint") {
  RunConfig cfg;
  cfg.algorithm = "SPEA2";
  cfg.problem = "IMF1";
  cfg.D = 5;
  cfg.N = 20;
  cfg.budget = 200;
  cfg.trace_cadence = 40;
  RunRecord rec = run_algorithm(cfg);
  std::vector<long long> fes;
  for (const auto& s : rec.snapshots) fes.push_back(s.fe);
  CHECK(fes == std::vector<long long>{20, 60, 100, 140, 180, 200});
}

TEST_CASE("runs are deterministic: identical config, identical record") {
  RunConfig cfg = tiny_gmoea_config();
  RunRecord a = run_algorithm(cfg);
  RunRecord b = run_algorithm(cfg);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    CHECK(a.snapshots[i].fe == b.snapshots[i].fe);
    CHECK(a.snapshots[i].igd == b.snapshots[i].igd);  // bitwise
    CHECK(a.snapshots[i].hv == b.snapshots[i].hv);
  }
  CHECK(a.final_decisions == b.final_decisions);
  CHECK(a.final_objectives == b.final_objectives);
  CHECK(a.fe_used == b.fe_used);

  RunConfig other = cfg;
  other.seed = 6;
  RunRecord c = run_algorithm(other);
  CHECK(a.final_decisions != c.final_decisions);
}

TEST_CASE("hybrid run trains the GAN; ablations manage without") {
  RunConfig cfg = tiny_gmoea_config();
  RunRecord gmoea = run_algorithm(cfg);
  CHECK(gmoea.fe_used <= cfg.budget);
  CHECK(cfg.budget - gmoea.fe_used < cfg.N);
  CHECK(!gmoea.losses.empty());  // per-update loss rows accumulate

  RunConfig star = cfg;
  star.algorithm = "GMOEA*";
  RunRecord rs = run_algorithm(star);
  CHECK(rs.losses.empty());  // gan_share 0 skips training entirely
  CHECK(rs.fe_used == gmoea.fe_used);

  RunConfig minus = cfg;
  minus.algorithm = "GMOEA-";
  RunRecord rm = run_algorithm(minus);
  CHECK(!rm.losses.empty());
  CHECK(rm.final_decisions.size() == 16);
}

TEST_CASE("final indicator reads the last snapshot") {
  RunRecord rec = synthetic_record(0.25, 0.5);
  CHECK(final_indicator(rec, Indicator::Igd) == 0.25);
  CHECK(final_indicator(rec, Indicator::Hv) == 0.5);
  RunRecord empty;
  CHECK_THROWS_AS(final_indicator(empty, Indicator::Igd), StateError);
}

TEST_CASE("record-set comparison: symbols track medians and significance") {
  std::vector<RunRecord> good, bad, close;
  for (int i = 0; i < 5; ++i) {
    good.push_back(synthetic_record(0.01 + 0.001 * i, 0.9 - 0.001 * i));
    bad.push_back(synthetic_record(0.50 + 0.001 * i, 0.2 - 0.001 * i));
    close.push_back(synthetic_record(0.012 + 0.001 * i, 0.9 - 0.0015 * i));
  }
  CompareResult r = compare(good, bad, Indicator::Igd);
  CHECK(r.symbol == '+');  // lower IGD is better
  CHECK(r.median_a == doctest::Approx(0.012));
  CHECK(r.median_b == doctest::Approx(0.502));
  CHECK(compare(bad, good, Indicator::Igd).symbol == '-');
  CHECK(compare(good, bad, Indicator::Hv).symbol == '+');  // higher HV is better
  CHECK(compare(bad, good, Indicator::Hv).symbol == '-');
  CHECK(compare(good, close, Indicator::Igd).symbol == '=');
  CHECK(compare(good, good, Indicator::Igd).symbol == '=');

  std::vector<RunRecord> mixed = good;
  mixed.front().config.D = 50;
  CHECK_THROWS_AS(compare(mixed, bad, Indicator::Igd), PreconditionError);
  CHECK_THROWS_AS(compare({}, bad, Indicator::Igd), PreconditionError);
}

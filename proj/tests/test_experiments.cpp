#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fjvote/analysis.hpp"
#include "fjvote/errors.hpp"
#include "fjvote/experiments.hpp"
#include "fjvote/rng.hpp"

using namespace fjvote;

TEST_CASE("sample_cell_instance pins the extremes and is deterministic") {
  {
    Rng a = Rng::substream(5, 3, 7);
    Rng b = Rng::substream(5, 3, 7);
    const auto [ya, ta] = sample_cell_instance(0.7, 0.4, 8, a);
    const auto [yb, tb] = sample_cell_instance(0.7, 0.4, 8, b);
    CHECK(ya.values == yb.values);
    CHECK(ta.values == tb.values);
    CHECK(ya.values[0] == 0.0);
    CHECK(ya.values[1] == 0.7);
    CHECK(max_distance(ya) == 0.7);
    CHECK(ya.values.maxCoeff() <= 0.7);
    CHECK(ta.values.maxCoeff() <= 0.4);
    CHECK((ta.values.array() > 0.0).any());
  }
  {
    Rng rng(9);
    const auto [y, theta] = sample_cell_instance(0.0, 0.5, 4, rng);
    CHECK(y.values.isZero());
  }
}

TEST_CASE("grid config json round trip and validation") {
  GridConfig cfg;
  cfg.resolution = 5;
  cfg.trials = 2;
  cfg.seed = 77;
  const auto back = GridConfig::from_json(cfg.to_json());
  CHECK(back.resolution == 5);
  CHECK(back.trials == 2);
  CHECK(back.seed == 77);
  CHECK(back.n == 8);
  CHECK(back.c == 1.0);

  nlohmann::json bad = {{"policy", {{"c", 1.5}}}};
  CHECK_THROWS_AS(GridConfig::from_json(bad), ConfigError);

  // Defaults apply for missing sections.
  const auto defaults = GridConfig::from_json(nlohmann::json::object());
  CHECK(defaults.resolution == 21);
  CHECK(defaults.issues == 500);
  CHECK(defaults.trials == 25);
}

TEST_CASE("small grid is deterministic regardless of worker count") {
  GridConfig cfg;
  cfg.resolution = 5;
  cfg.trials = 3;
  cfg.issues = 120;
  cfg.seed = 11;
  const auto serial = run_grid(cfg, 1);
  const auto parallel = run_grid(cfg, 4);
  REQUIRE(serial.size() == 25);
  REQUIRE(parallel.size() == 25);

  std::ostringstream a, b;
  write_grid_csv(serial, a);
  write_grid_csv(parallel, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("grid cells below the guarantee line all converge") {
  GridConfig cfg;
  cfg.resolution = 6;
  cfg.trials = 4;
  cfg.issues = 400;
  cfg.seed = 3;
  const auto cells = run_grid(cfg, 4);
  for (const auto& cell : cells) {
    if (cfg.c * cell.d0 + cell.theta_max < 1.0) {
      CHECK(cell.consensus);
    }
  }
}

TEST_CASE("sweep config json round trip and validation") {
  SweepConfig cfg;
  cfg.issues = 50;
  cfg.seed = 5;
  const auto back = SweepConfig::from_json(cfg.to_json());
  CHECK(back.issues == 50);
  CHECK(back.c_values.size() == 6);
  CHECK(back.n == 10);
  CHECK(back.density == 0.5);

  nlohmann::json bad = {{"policy", {{"c_values", {0.5}}}}};
  CHECK_THROWS_AS(SweepConfig::from_json(bad), ConfigError);
}

TEST_CASE("sweep is deterministic and shaped as expected") {
  SweepConfig cfg;
  cfg.issues = 80;
  cfg.seed = 21;
  const auto a = run_sweep(cfg, 1);
  const auto b = run_sweep(cfg, 3);
  REQUIRE(a.size() == 6);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].c == cfg.c_values[k]);
    CHECK(a[k].spread.size() == static_cast<std::size_t>(cfg.issues) + 1);
    CHECK(a[k].spread == b[k].spread);
  }
  // All c values share the same realization, so d(0) is identical.
  for (const auto& s : a) CHECK(s.spread.front() == a.front().spread.front());
}

TEST_CASE("decreasing stubbornness reaches consensus for every gain") {
  SweepConfig cfg;
  cfg.issues = 2000;
  cfg.seed = 31;
  const auto series = run_sweep(cfg, 4);
  for (const auto& s : series) {
    CHECK(s.spread.back() < 1e-3);
  }
}

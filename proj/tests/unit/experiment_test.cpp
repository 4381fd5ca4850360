#include <doctest.h>

#include <cmath>

#include "pcslab/experiment.hpp"

using namespace pcs;

namespace {
const char* kBasicConfig =
    "scenario = pcs_x_pair\n"
    "engine = enumerate\n"
    "sweep = p:0:1:5\n"
    "seed = 7\n"
    "shots = 2000\n";
}

TEST_CASE("experiment: config parsing and canonical form") {
  ExperimentConfig cfg = ExperimentConfig::from_text(kBasicConfig);
  CHECK(cfg.scenario == Scenario::PcsXPair);
  CHECK(cfg.engine == Engine::Enumerate);
  CHECK(cfg.grid.size() == 5);
  CHECK(cfg.grid[4] == doctest::Approx(1.0));
  CHECK(cfg.seed == 7);

  ExperimentConfig again = ExperimentConfig::from_text(cfg.to_text());
  CHECK(again.to_text() == cfg.to_text());
  CHECK(again.hash() == cfg.hash());

  CHECK_THROWS_AS(ExperimentConfig::from_text("bogus_key = 3\nsweep = p:0:1:2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::from_text("scenario = pcs_x_pair\n"),
                  std::invalid_argument);  // no grid
  CHECK_THROWS_AS(ExperimentConfig::from_text("sweep = p:0:2:3\n"), std::invalid_argument);
  CHECK_THROWS_AS(
      ExperimentConfig::from_text("scenario = bbpssw\nsweep = p:0:1:3\n"),
      std::invalid_argument);
}

TEST_CASE("experiment: grids") {
  CHECK(parse_grid("0:1:3") == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(parse_grid("0.25,0.5") == std::vector<double>{0.25, 0.5});
  CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
}

TEST_CASE("experiment: analytic and enumerate sweeps coincide") {
  ExperimentConfig cfg = ExperimentConfig::from_text(kBasicConfig);
  SweepResult enumerated = run_sweep(cfg);
  cfg.engine = Engine::Analytic;
  SweepResult analytic = run_sweep(cfg);
  REQUIRE(enumerated.rows.size() == analytic.rows.size());
  for (size_t i = 0; i < enumerated.rows.size(); ++i) {
    CHECK(std::abs(enumerated.rows[i].pass_rate - analytic.rows[i].pass_rate) < 1e-10);
    CHECK(std::abs(enumerated.rows[i].fidelity - analytic.rows[i].fidelity) < 1e-10);
  }
}

TEST_CASE("experiment: sweeps rerun byte-identically") {
  ExperimentConfig cfg = ExperimentConfig::from_text(
      "scenario = pcs_xz_pair\nengine = monte_carlo\nsweep = p:0.1:0.4:3\n"
      "shots = 5000\nseed = 21\n");
  std::string a = to_csv(run_sweep(cfg));
  std::string b = to_csv(run_sweep(cfg));
  CHECK(a == b);
  CHECK(a.find(sweep_csv_header()) == 0);
  // Every row carries the seed and the config hash.
  CHECK(a.find(std::to_string(cfg.hash())) != std::string::npos);
  CHECK(a.find(",21,") != std::string::npos);
}

TEST_CASE("experiment: engine capability errors are descriptive") {
  ExperimentConfig cfg = ExperimentConfig::from_text(
      "scenario = recursive_pcs\nr = 1\nengine = oracle\nsweep = p:0:0.2:2\n");
  CHECK_THROWS_WITH_AS(run_sweep(cfg),
                       doctest::Contains("exceeds the dense-oracle qubit cap"),
                       std::length_error);

  ExperimentConfig cfg2 = ExperimentConfig::from_text(
      "scenario = swap\nengine = analytic\nsweep = p:0:0.2:2\n");
  CHECK_THROWS_AS(run_sweep(cfg2), std::invalid_argument);
}

TEST_CASE("experiment: engine comparison passes on an exact scenario") {
  ExperimentConfig cfg = ExperimentConfig::from_text(
      "scenario = pcs_xz_pair\nengine = enumerate\nsweep = p:0:0.6:3\n"
      "shots = 20000\nseed = 5\n");
  CompareReport report = compare_engines(cfg);
  CHECK(report.max_exact_deviation < 1e-9);
  CHECK_FALSE(report.exact_gate_failed);
  CHECK_FALSE(report.mc_gate_failed);
  CHECK(report.exit_code() == 0);
  CHECK(report.text.find("enumerate_pass") != std::string::npos);
}

TEST_CASE("experiment: figure emitters") {
  std::string fig2a = reproduce_figure("fig2a", 100, 1);
  CHECK(fig2a.rfind("F,Fout_pcs_x,Fout_bbpssw_r1,diagonal", 0) == 0);
  std::string fig3b = reproduce_figure("fig3b", 100, 1);
  CHECK(fig3b.find("rate_pcs_xz") != std::string::npos);
  CHECK_THROWS_AS(reproduce_figure("fig99", 100, 1), std::invalid_argument);
}

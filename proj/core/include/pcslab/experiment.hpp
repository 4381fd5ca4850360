#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcslab/circuit.hpp"
#include "pcslab/protocols.hpp"

namespace pcs {

enum class Engine { Analytic, Enumerate, MonteCarlo, Oracle };
enum class Scenario { PcsXPair, PcsXZPair, RecursivePcs, Swap, TeleportedPcs, Bbpssw };

const char* engine_name(Engine e);
const char* scenario_name(Scenario s);
Engine engine_from_name(const std::string& name);
Scenario scenario_from_name(const std::string& name);

/// Flat key = value experiment description.  Unknown keys are rejected.
struct ExperimentConfig {
  Scenario scenario = Scenario::PcsXZPair;
  Engine engine = Engine::Enumerate;
  /// Sweep parameter: "p" (depolarizing strength) or "F" (input fidelity).
  std::string sweep_param = "p";
  std::vector<double> grid;
  uint32_t r = 0;           // recursion level
  uint32_t rounds = 1;      // purification rounds
  CheckMode check_mode = CheckMode::XZ;
  Protection protect = Protection::Flying;
  double p_1q = 0.0;
  double p_2q = 0.0;
  uint64_t shots = 100000;
  uint64_t seed = 1;

  static ExperimentConfig from_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  /// Canonical text form; hash() is FNV-1a over it.
  std::string to_text() const;
  uint64_t hash() const;
  void validate() const;
};

struct SweepRow {
  std::string scenario;
  std::string engine;
  int r = 0;
  double p_channel = 0.0;
  double p_1q = 0.0;
  double p_2q = 0.0;
  double f_in = 0.0;
  uint64_t n_shots = 0;
  double pass_rate = 0.0;
  double pass_stderr = 0.0;
  double fidelity = 0.0;
  double fidelity_stderr = 0.0;
  uint64_t seed = 0;
  uint64_t config_hash = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Builds the scenario circuit at one grid value (no gate noise applied).
Circuit build_scenario_circuit(const ExperimentConfig& cfg, double value);

/// Runs the configured engine over the grid.  Deterministic for a fixed
/// config: rerunning yields byte-identical CSV.
SweepResult run_sweep(const ExperimentConfig& cfg);

std::string sweep_csv_header();
std::string to_csv(const SweepResult& result);

struct CompareReport {
  std::string text;
  double max_exact_deviation = 0.0;
  double max_sigma_distance = 0.0;
  bool exact_gate_failed = false;   // exact engines disagree beyond 1e-9
  bool mc_gate_failed = false;      // Monte Carlo beyond 4 sigma
  bool mc_warning = false;          // Monte Carlo beyond 3 sigma
  int exit_code() const { return (exact_gate_failed || mc_gate_failed) ? 3 : 0; }
};

/// Cross-validates every engine the scenario supports on the config's grid.
CompareReport compare_engines(const ExperimentConfig& cfg);

/// Emits the x/y series of a named figure as CSV.  Knows: fig2a, fig2b,
/// fig3b, fig7a, fig7b, fig8.
std::string reproduce_figure(const std::string& name, uint64_t shots, uint64_t seed);

std::vector<double> parse_grid(const std::string& text);

}  // namespace pcs

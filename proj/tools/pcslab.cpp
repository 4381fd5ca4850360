// Command-line front end: analytic curves, sweeps, engine comparison, code
// certification, graph-rule demos, and figure reproduction.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure, 3 statistical
// gate failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pcslab/analytic.hpp"
#include "pcslab/channels.hpp"
#include "pcslab/code.hpp"
#include "pcslab/experiment.hpp"
#include "pcslab/graph_state.hpp"
#include "pcslab/protocols.hpp"
#include "pcslab/rng.hpp"

namespace {

using nlohmann::json;

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << content;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run_analytic(const std::string& scheme, const std::string& grid_spec,
                 const std::string& out_path) {
  std::ostringstream os;
  std::vector<double> grid = pcs::parse_grid(grid_spec.substr(grid_spec.find(':') + 1));
  bool p_grid = grid_spec.rfind("p:", 0) == 0;
  if (!p_grid && grid_spec.rfind("F:", 0) != 0) {
    throw std::invalid_argument("grid must start with p: or F:");
  }

  os << (p_grid ? "p" : "F") << ",f_in,f_out,rate,qubit_cost\n";
  for (double v : grid) {
    pcs::PurificationPoint pt;
    if (scheme == "pcs_x") {
      pt = p_grid ? pcs::pcs_x_point_p(v, v) : pcs::pcs_x_point_F(v);
    } else if (scheme == "pcs_xz") {
      pt = p_grid ? pcs::pcs_xz_point_p(v, v) : pcs::pcs_xz_point_F(v);
    } else if (scheme == "pcs_x_half") {
      if (!p_grid) throw std::invalid_argument("pcs_x_half takes a p grid");
      pt = pcs::pcs_x_half_point(v);
    } else if (scheme.rfind("bbpssw", 0) == 0) {
      if (p_grid) throw std::invalid_argument("bbpssw takes an F grid");
      uint32_t rounds = 1;
      auto colon = scheme.find(':');
      if (colon != std::string::npos) rounds = std::stoul(scheme.substr(colon + 1));
      pt = pcs::bbpssw_recursive(v, rounds);
    } else {
      throw std::invalid_argument("unknown scheme: " + scheme);
    }
    os << fmt(v) << "," << fmt(pt.f_in) << "," << fmt(pt.f_out) << "," << fmt(pt.rate)
       << "," << pt.qubit_cost << "\n";
  }
  write_output(out_path, os.str());
  return 0;
}

pcs::ExperimentConfig load_config(const std::string& path, uint64_t seed_flag,
                                  uint64_t shots_flag, const std::string& engine_flag) {
  pcs::ExperimentConfig cfg = pcs::ExperimentConfig::from_file(path);
  if (seed_flag != UINT64_MAX) cfg.seed = seed_flag;
  if (shots_flag != UINT64_MAX) cfg.shots = shots_flag;
  if (!engine_flag.empty()) cfg.engine = pcs::engine_from_name(engine_flag);
  cfg.validate();
  return cfg;
}

int run_code_analyze(uint32_t r, const std::string& out_path, const std::string& json_path) {
  if (r < 1) throw std::invalid_argument("code analysis needs recursion level r >= 1");
  pcs::Circuit enc = pcs::build_pcs_side_encoding(r);
  pcs::CodeSpec code = pcs::extract_code(enc, 0);
  pcs::DistanceResult dist = pcs::distance(code, 3);
  pcs::GeneratingSet gens = pcs::min_weight_generating_set(code);
  auto pattern = pcs::css_h_pattern(r);
  pcs::CssResult css = pcs::css_equivalence_check(code, pattern);
  pcs::SyndromeTable table = pcs::syndrome_table(r, 2);

  std::ostringstream os;
  os << "code certification, recursion level " << r << "\n";
  os << "parameters: [[" << code.n << ", " << code.k << ", "
     << (dist.distance ? std::to_string(*dist.distance) : ">" + std::to_string(dist.searched_up_to))
     << "]]\n";
  os << "generators (extracted):\n";
  for (const auto& g : code.generators) os << "  " << g.str() << "\n";
  os << "logical X: " << code.logical_x.str() << "\n";
  os << "logical Z: " << code.logical_z.str() << "\n";
  if (dist.witness) os << "minimum-weight logical: " << dist.witness->str() << "\n";
  os << "min-max-weight generating set (max weight " << gens.max_weight << "):\n";
  for (const auto& g : gens.generators) os << "  " << g.str() << "\n";
  os << "H pattern for CSS form: {";
  bool first = true;
  for (uint32_t q : pattern) {
    os << (first ? "" : ", ") << "a" << q;
    first = false;
  }
  os << "}" << (css.is_css ? " -> CSS" : " -> NOT CSS") << "\n";

  uint32_t key_a3 = 1u << 2;  // syndrome with only the a3 check flipped
  auto it = table.by_syndrome.find(key_a3);
  os << "errors with syndrome [" << table.syndrome_string(key_a3) << "] up to weight 2:";
  if (it != table.by_syndrome.end()) {
    for (const auto& e : it->second) os << " " << e.str();
  }
  os << "\n";
  write_output(out_path, os.str());

  if (!json_path.empty()) {
    json j;
    j["r"] = r;
    j["n"] = code.n;
    j["k"] = code.k;
    j["distance"] = dist.distance ? json(*dist.distance) : json(nullptr);
    j["generators"] = json::array();
    for (const auto& g : code.generators) j["generators"].push_back(g.str());
    j["logical_x"] = code.logical_x.str();
    j["logical_z"] = code.logical_z.str();
    j["min_max_generator_weight"] = gens.max_weight;
    j["min_weight_generators"] = json::array();
    for (const auto& g : gens.generators) j["min_weight_generators"].push_back(g.str());
    j["css"] = css.is_css;
    j["h_pattern"] = json::array();
    for (uint32_t q : pattern) j["h_pattern"].push_back(q);
    std::ofstream jf(json_path);
    if (!jf) throw std::runtime_error("cannot open json output: " + json_path);
    jf << j.dump(2) << "\n";
  }
  return 0;
}

int run_graph_demo(const std::string& graph_path, const std::string& random_spec,
                   const std::string& ops_spec, const std::string& out_path) {
  pcs::GraphState g;
  if (!graph_path.empty()) {
    std::ifstream in(graph_path);
    if (!in) throw std::runtime_error("cannot open graph file: " + graph_path);
    std::stringstream ss;
    ss << in.rdbuf();
    g = pcs::graph_from_text(ss.str());
  } else if (!random_spec.empty()) {
    int n;
    double density;
    uint64_t seed;
    if (std::sscanf(random_spec.c_str(), "%d:%lf:%llu", &n, &density,
                    (unsigned long long*)&seed) != 3) {
      throw std::invalid_argument("--random wants n:density:seed");
    }
    pcs::Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.next_double() < density) edges.emplace_back(u, v);
      }
    }
    g = pcs::GraphState::from_edges(n, edges);
  } else {
    throw std::invalid_argument("provide --graph or --random");
  }

  std::ostringstream os;
  os << "initial graph:\n" << pcs::graph_to_text(g);
  bool all_ok = true;

  // ops: comma list of basis:vertex[:neighbor]@outcome, e.g. "x:0:1@0,z:3@1".
  std::stringstream ops(ops_spec);
  std::string tok;
  while (std::getline(ops, tok, ',')) {
    if (tok.empty()) continue;
    auto at = tok.find('@');
    if (at == std::string::npos) throw std::invalid_argument("op missing @outcome: " + tok);
    int outcome = std::stoi(tok.substr(at + 1));
    std::string head = tok.substr(0, at);
    std::stringstream hs(head);
    std::string basis_s, a_s, b0_s;
    std::getline(hs, basis_s, ':');
    std::getline(hs, a_s, ':');
    std::optional<int> b0;
    if (std::getline(hs, b0_s, ':')) b0 = std::stoi(b0_s);
    char basis = static_cast<char>(std::toupper(basis_s.at(0)));
    int a = std::stoi(a_s);

    pcs::RuleCheck chk = pcs::check_measurement_rule(g, basis, a, b0, outcome);
    os << "measure " << basis << " on " << a << " outcome " << outcome << ": prob "
       << fmt(chk.probability);
    if (chk.probability > 1e-12) {
      os << ", oracle fidelity " << fmt(chk.fidelity);
      bool ok = chk.fidelity >= 1.0 - 1e-10;
      all_ok = all_ok && ok;
      os << (ok ? " [ok]" : " [MISMATCH]");
      g = basis == 'X'   ? pcs::measure_x(g, a, b0, outcome)
          : basis == 'Y' ? pcs::measure_y(g, a, outcome)
                         : pcs::measure_z(g, a, outcome);
    } else {
      os << " (impossible branch, skipped)";
    }
    os << "\n";
  }
  os << "final graph:\n" << pcs::graph_to_text(g);
  os << (all_ok ? "oracle agreement: OK\n" : "oracle agreement: MISMATCH\n");
  write_output(out_path, os.str());
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli-check network protocol laboratory"};
  app.require_subcommand(1);

  std::string out_path;
  uint64_t seed_flag = UINT64_MAX;
  uint64_t shots_flag = UINT64_MAX;
  std::string engine_flag;

  // analytic
  auto* analytic = app.add_subcommand("analytic", "closed-form curves as CSV");
  std::string scheme = "pcs_x";
  std::string grid_spec = "F:0.25:1:76";
  analytic->add_option("--scheme", scheme, "pcs_x | pcs_xz | pcs_x_half | bbpssw[:rounds]");
  analytic->add_option("--grid", grid_spec, "p:start:stop:count or F:start:stop:count");
  analytic->add_option("--out", out_path, "output CSV path (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run an experiment config over its grid");
  std::string config_path;
  sweep->add_option("--config", config_path, "experiment config file")->required();
  sweep->add_option("--seed", seed_flag, "override config seed");
  sweep->add_option("--shots", shots_flag, "override config shots");
  sweep->add_option("--engine", engine_flag, "override config engine");
  sweep->add_option("--out", out_path, "output CSV path (default stdout)");

  // compare
  auto* compare = app.add_subcommand("compare", "cross-validate engines on a config");
  compare->add_option("--config", config_path, "experiment config file")->required();
  compare->add_option("--seed", seed_flag, "override config seed");
  compare->add_option("--shots", shots_flag, "override config shots");
  compare->add_option("--out", out_path, "output path (default stdout)");

  // code-analyze
  auto* code = app.add_subcommand("code-analyze", "certify the recursive check code");
  uint32_t r = 1;
  std::string json_path;
  code->add_option("--r", r, "recursion level (>= 1)")->required();
  code->add_option("--out", out_path, "text report path (default stdout)");
  code->add_option("--json", json_path, "machine-readable report path");

  // graph-demo
  auto* graph = app.add_subcommand("graph-demo", "replay measurement rules on a graph");
  std::string graph_path, random_spec, ops_spec;
  graph->add_option("--graph", graph_path, "edge-list file (n <count>, then u v lines)");
  graph->add_option("--random", random_spec, "random graph n:density:seed");
  graph->add_option("--ops", ops_spec, "basis:vertex[:neighbor]@outcome, comma separated");
  graph->add_option("--out", out_path, "output path (default stdout)");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "emit a named figure's series as CSV");
  std::string figure;
  reproduce->add_option("figure", figure, "fig2a | fig2b | fig3b | fig7a | fig7b | fig8")
      ->required();
  reproduce->add_option("--seed", seed_flag, "Monte Carlo seed (default 1)");
  reproduce->add_option("--shots", shots_flag, "shots per point (default 100000)");
  reproduce->add_option("--out", out_path, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (analytic->parsed()) return run_analytic(scheme, grid_spec, out_path);
    if (sweep->parsed()) {
      pcs::ExperimentConfig cfg = load_config(config_path, seed_flag, shots_flag, engine_flag);
      write_output(out_path, pcs::to_csv(pcs::run_sweep(cfg)));
      return 0;
    }
    if (compare->parsed()) {
      pcs::ExperimentConfig cfg = load_config(config_path, seed_flag, shots_flag, "");
      pcs::CompareReport report = pcs::compare_engines(cfg);
      write_output(out_path, report.text);
      return report.exit_code();
    }
    if (code->parsed()) return run_code_analyze(r, out_path, json_path);
    if (graph->parsed()) return run_graph_demo(graph_path, random_spec, ops_spec, out_path);
    if (reproduce->parsed()) {
      uint64_t shots = shots_flag == UINT64_MAX ? 100000 : shots_flag;
      uint64_t seed = seed_flag == UINT64_MAX ? 1 : seed_flag;
      write_output(out_path, pcs::reproduce_figure(figure, shots, seed));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

#include "pcslab/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pcslab/analytic.hpp"
#include "pcslab/channels.hpp"
#include "pcslab/engine.hpp"
#include "pcslab/oracle.hpp"

namespace pcs {

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::Enumerate: return "enumerate";
    case Engine::MonteCarlo: return "monte_carlo";
    case Engine::Oracle: return "oracle";
  }
  return "?";
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::PcsXPair: return "pcs_x_pair";
    case Scenario::PcsXZPair: return "pcs_xz_pair";
    case Scenario::RecursivePcs: return "recursive_pcs";
    case Scenario::Swap: return "swap";
    case Scenario::TeleportedPcs: return "teleported_pcs";
    case Scenario::Bbpssw: return "bbpssw";
  }
  return "?";
}

Engine engine_from_name(const std::string& name) {
  for (Engine e : {Engine::Analytic, Engine::Enumerate, Engine::MonteCarlo, Engine::Oracle}) {
    if (name == engine_name(e)) return e;
  }
  throw std::invalid_argument("unknown engine: " + name);
}

Scenario scenario_from_name(const std::string& name) {
  for (Scenario s : {Scenario::PcsXPair, Scenario::PcsXZPair, Scenario::RecursivePcs,
                     Scenario::Swap, Scenario::TeleportedPcs, Scenario::Bbpssw}) {
    if (name == scenario_name(s)) return s;
  }
  throw std::invalid_argument("unknown scenario: " + name);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    // start:stop:count
    double start, stop;
    int count;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 || count < 1) {
      throw std::invalid_argument("grid must be start:stop:count or comma list");
    }
    for (int i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
    }
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) grid.push_back(std::stod(tok));
    }
  }
  if (grid.empty()) throw std::invalid_argument("empty sweep grid");
  return grid;
}

namespace {

std::string format_grid(const std::vector<double>& grid) {
  std::ostringstream os;
  char buf[64];
  for (size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", grid[i]);
    os << (i ? "," : "") << buf;
  }
  return os.str();
}

const char* check_mode_name(CheckMode m) {
  switch (m) {
    case CheckMode::None: return "none";
    case CheckMode::X: return "x";
    case CheckMode::XZ: return "xz";
  }
  return "?";
}

const char* protection_name(Protection p) {
  switch (p) {
    case Protection::None: return "none";
    case Protection::Flying: return "flying";
    case Protection::FlyingAndMemory: return "flying_memory";
  }
  return "?";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig cfg;
  cfg.grid.clear();
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank) throw std::invalid_argument("config line missing '=': " + line);
      continue;
    }
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "scenario") {
      cfg.scenario = scenario_from_name(value);
    } else if (key == "engine") {
      cfg.engine = engine_from_name(value);
    } else if (key == "sweep") {
      auto colon = value.find(':');
      auto comma = value.find(',');
      if (colon != std::string::npos &&
          (comma == std::string::npos || colon < comma)) {
        cfg.sweep_param = value.substr(0, colon);
        cfg.grid = parse_grid(value.substr(colon + 1));
      } else {
        throw std::invalid_argument("sweep must be param:start:stop:count or param:v1,v2,...");
      }
    } else if (key == "r") {
      cfg.r = static_cast<uint32_t>(std::stoul(value));
    } else if (key == "rounds") {
      cfg.rounds = static_cast<uint32_t>(std::stoul(value));
    } else if (key == "check_mode") {
      if (value == "none") cfg.check_mode = CheckMode::None;
      else if (value == "x") cfg.check_mode = CheckMode::X;
      else if (value == "xz") cfg.check_mode = CheckMode::XZ;
      else throw std::invalid_argument("check_mode must be none|x|xz");
    } else if (key == "protect") {
      if (value == "none") cfg.protect = Protection::None;
      else if (value == "flying") cfg.protect = Protection::Flying;
      else if (value == "flying_memory") cfg.protect = Protection::FlyingAndMemory;
      else throw std::invalid_argument("protect must be none|flying|flying_memory");
    } else if (key == "p_1q") {
      cfg.p_1q = std::stod(value);
    } else if (key == "p_2q") {
      cfg.p_2q = std::stod(value);
    } else if (key == "shots") {
      cfg.shots = std::stoull(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  char buf[64];
  os << "scenario = " << scenario_name(scenario) << "\n";
  os << "engine = " << engine_name(engine) << "\n";
  os << "sweep = " << sweep_param << ":" << format_grid(grid) << "\n";
  os << "r = " << r << "\n";
  os << "rounds = " << rounds << "\n";
  os << "check_mode = " << check_mode_name(check_mode) << "\n";
  os << "protect = " << protection_name(protect) << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", p_1q);
  os << "p_1q = " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", p_2q);
  os << "p_2q = " << buf << "\n";
  os << "shots = " << shots << "\n";
  os << "seed = " << seed << "\n";
  return os.str();
}

uint64_t ExperimentConfig::hash() const {
  std::string text = to_text();
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

void ExperimentConfig::validate() const {
  if (grid.empty()) throw std::invalid_argument("config needs a sweep grid");
  if (sweep_param != "p" && sweep_param != "F") {
    throw std::invalid_argument("sweep parameter must be p or F");
  }
  for (double v : grid) {
    if (sweep_param == "p" && !(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("p grid values must lie in [0, 1]");
    }
    if (sweep_param == "F" && !(v >= 0.25 && v <= 1.0)) {
      throw std::invalid_argument("F grid values must lie in [0.25, 1]");
    }
  }
  if (!(p_1q >= 0 && p_1q <= 1 && p_2q >= 0 && p_2q <= 1)) {
    throw std::invalid_argument("gate-noise rates must lie in [0, 1]");
  }
  if (scenario == Scenario::Bbpssw && sweep_param != "F") {
    throw std::invalid_argument("bbpssw sweeps the input fidelity F");
  }
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
}

namespace {

double grid_value_as_p(const ExperimentConfig& cfg, double v) {
  return cfg.sweep_param == "F" ? p_from_fidelity(v) : v;
}

double grid_value_as_f(const ExperimentConfig& cfg, double v) {
  if (cfg.sweep_param == "F") return v;
  return bell_fidelity_from_half_ps(v, v);
}

}  // namespace

Circuit build_scenario_circuit(const ExperimentConfig& cfg, double value) {
  double p = cfg.scenario == Scenario::Bbpssw ? 0.0 : grid_value_as_p(cfg, value);
  Circuit base;
  switch (cfg.scenario) {
    case Scenario::PcsXPair:
      base = build_pcs_x_pair(p, p);
      break;
    case Scenario::PcsXZPair:
      base = build_pcs_xz_pair(p, p);
      break;
    case Scenario::RecursivePcs:
      base = build_recursive_pcs(cfg.r, p, p);
      break;
    case Scenario::Swap:
      base = build_swap_with_pcs(cfg.check_mode, cfg.protect, p);
      break;
    case Scenario::TeleportedPcs:
      base = build_teleported_pcs(p);
      break;
    case Scenario::Bbpssw:
      base = build_bbpssw_round(value);
      break;
  }
  if (cfg.p_1q > 0 || cfg.p_2q > 0) base = with_gate_noise(base, cfg.p_1q, cfg.p_2q);
  return base;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult result;
  uint64_t chash = cfg.hash();
  for (double v : cfg.grid) {
    SweepRow row;
    row.scenario = scenario_name(cfg.scenario);
    row.engine = engine_name(cfg.engine);
    row.r = cfg.scenario == Scenario::RecursivePcs ? int(cfg.r)
            : cfg.scenario == Scenario::Bbpssw     ? int(cfg.rounds)
                                                   : 0;
    row.p_channel = cfg.scenario == Scenario::Bbpssw ? 0.0 : grid_value_as_p(cfg, v);
    row.p_1q = cfg.p_1q;
    row.p_2q = cfg.p_2q;
    row.f_in = cfg.scenario == Scenario::Bbpssw ? v : grid_value_as_f(cfg, v);
    row.seed = cfg.seed;
    row.config_hash = chash;

    switch (cfg.engine) {
      case Engine::Analytic: {
        PurificationPoint pt;
        double pv = row.p_channel;
        switch (cfg.scenario) {
          case Scenario::PcsXPair: pt = pcs_x_point_p(pv, pv); break;
          case Scenario::PcsXZPair: pt = pcs_xz_point_p(pv, pv); break;
          case Scenario::Bbpssw: pt = bbpssw_recursive(v, cfg.rounds); break;
          default:
            throw std::invalid_argument(
                "no closed form for this scenario; use enumerate or monte_carlo");
        }
        row.n_shots = 0;
        row.pass_rate = pt.rate;
        row.fidelity = pt.f_out;
        break;
      }
      case Engine::Enumerate: {
        ExactResult ex = enumerate_paths(build_scenario_circuit(cfg, v));
        row.n_shots = 0;
        row.pass_rate = ex.pass_prob;
        row.fidelity = ex.fidelity;
        break;
      }
      case Engine::Oracle: {
        OracleResult orc = oracle_run(build_scenario_circuit(cfg, v));
        row.n_shots = 0;
        row.pass_rate = orc.pass_prob;
        row.fidelity = orc.fidelity;
        break;
      }
      case Engine::MonteCarlo: {
        McEstimate mc = estimate_bell_fidelity(build_scenario_circuit(cfg, v),
                                               cfg.shots, cfg.seed);
        row.n_shots = cfg.shots;
        row.pass_rate = mc.pass_rate;
        row.pass_stderr = mc.pass_stderr;
        row.fidelity = mc.fidelity;
        row.fidelity_stderr = mc.fidelity_stderr;
        break;
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string sweep_csv_header() {
  return "scenario,engine,r,p_channel,p_1q,p_2q,F_in,n_shots,pass_rate,pass_stderr,"
         "fidelity,fidelity_stderr,seed,config_hash";
}

namespace {
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << sweep_csv_header() << "\n";
  for (const auto& r : result.rows) {
    os << r.scenario << "," << r.engine << "," << r.r << "," << fmt_double(r.p_channel)
       << "," << fmt_double(r.p_1q) << "," << fmt_double(r.p_2q) << ","
       << fmt_double(r.f_in) << "," << r.n_shots << "," << fmt_double(r.pass_rate) << ","
       << fmt_double(r.pass_stderr) << "," << fmt_double(r.fidelity) << ","
       << fmt_double(r.fidelity_stderr) << "," << r.seed << "," << r.config_hash << "\n";
  }
  return os.str();
}

CompareReport compare_engines(const ExperimentConfig& cfg) {
  CompareReport report;
  std::ostringstream os;

  std::vector<Engine> engines;
  switch (cfg.scenario) {
    case Scenario::PcsXPair:
    case Scenario::PcsXZPair:
      engines = {Engine::Analytic, Engine::Enumerate, Engine::Oracle, Engine::MonteCarlo};
      break;
    case Scenario::Bbpssw:
      engines = {Engine::Analytic, Engine::Enumerate, Engine::Oracle, Engine::MonteCarlo};
      break;
    case Scenario::Swap:
    case Scenario::TeleportedPcs:
      engines = {Engine::Enumerate, Engine::Oracle, Engine::MonteCarlo};
      break;
    case Scenario::RecursivePcs:
      engines = {Engine::Enumerate, Engine::MonteCarlo};
      break;
  }
  // Drop the oracle when the circuit is too wide for it.
  if (!cfg.grid.empty()) {
    Circuit probe = build_scenario_circuit(cfg, cfg.grid.front());
    if (probe.n_qubits > kMaxDenseQubits) {
      std::erase(engines, Engine::Oracle);
      os << "# oracle skipped: " << probe.n_qubits << " qubits exceeds dense cap\n";
    }
    if (cfg.p_1q > 0 || cfg.p_2q > 0) {
      std::erase(engines, Engine::Enumerate);
      std::erase(engines, Engine::Analytic);
      os << "# exact engines skipped under gate noise\n";
    }
  }

  std::map<Engine, SweepResult> results;
  for (Engine e : engines) {
    ExperimentConfig sub = cfg;
    sub.engine = e;
    results[e] = run_sweep(sub);
  }

  os << "point";
  for (Engine e : engines) os << "," << engine_name(e) << "_pass," << engine_name(e) << "_fid";
  os << "\n";
  for (size_t i = 0; i < cfg.grid.size(); ++i) {
    os << fmt_double(cfg.grid[i]);
    for (Engine e : engines) {
      const SweepRow& r = results[e].rows[i];
      os << "," << fmt_double(r.pass_rate) << "," << fmt_double(r.fidelity);
    }
    os << "\n";
  }

  // Exact-vs-exact deviations.
  std::vector<Engine> exact;
  for (Engine e : engines) {
    if (e != Engine::MonteCarlo) exact.push_back(e);
  }
  for (size_t a = 0; a < exact.size(); ++a) {
    for (size_t b = a + 1; b < exact.size(); ++b) {
      for (size_t i = 0; i < cfg.grid.size(); ++i) {
        const SweepRow& ra = results[exact[a]].rows[i];
        const SweepRow& rb = results[exact[b]].rows[i];
        double dev = std::max(std::abs(ra.pass_rate - rb.pass_rate),
                              std::abs(ra.fidelity - rb.fidelity));
        if (std::isnan(dev)) dev = std::isnan(ra.fidelity) && std::isnan(rb.fidelity)
                                       ? std::abs(ra.pass_rate - rb.pass_rate)
                                       : 1.0;
        report.max_exact_deviation = std::max(report.max_exact_deviation, dev);
      }
    }
  }
  if (report.max_exact_deviation > 1e-9) report.exact_gate_failed = true;

  // Monte Carlo sigma distance against the first exact engine.
  if (!exact.empty() && results.count(Engine::MonteCarlo)) {
    for (size_t i = 0; i < cfg.grid.size(); ++i) {
      const SweepRow& ex = results[exact.front()].rows[i];
      const SweepRow& mc = results[Engine::MonteCarlo].rows[i];
      auto sigma = [](double delta, double err) {
        if (err == 0) return std::abs(delta) > 0 ? 1e9 : 0.0;
        return std::abs(delta) / err;
      };
      double s = std::max(sigma(mc.pass_rate - ex.pass_rate, mc.pass_stderr),
                          std::isnan(ex.fidelity) || std::isnan(mc.fidelity)
                              ? 0.0
                              : sigma(mc.fidelity - ex.fidelity, mc.fidelity_stderr));
      report.max_sigma_distance = std::max(report.max_sigma_distance, s);
    }
    if (report.max_sigma_distance > 4.0) report.mc_gate_failed = true;
    else if (report.max_sigma_distance > 3.0) report.mc_warning = true;
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "# max exact deviation = %.3g (gate 1e-9)\n"
                "# max MC sigma distance = %.3g (warn 3, fail 4)\n",
                report.max_exact_deviation, report.max_sigma_distance);
  os << buf;
  if (report.exact_gate_failed) os << "# FAIL: exact engines disagree\n";
  if (report.mc_gate_failed) os << "# FAIL: Monte Carlo outside 4 sigma\n";
  else if (report.mc_warning) os << "# WARN: Monte Carlo outside 3 sigma\n";
  report.text = os.str();
  return report;
}

std::string reproduce_figure(const std::string& name, uint64_t shots, uint64_t seed) {
  std::ostringstream os;
  auto fgrid = [](double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
  };

  if (name == "fig2a") {
    os << "F,Fout_pcs_x,Fout_bbpssw_r1,diagonal\n";
    for (double F : fgrid(0.25, 1.0, 151)) {
      os << fmt_double(F) << "," << fmt_double(pcs_x_point_F(F).f_out) << ","
         << fmt_double(bbpssw_step(F).f_out) << "," << fmt_double(F) << "\n";
    }
  } else if (name == "fig2b") {
    os << "F,Fout_pcs_xz,Fout_bbpssw_r2,Fout_bbpssw_r3,diagonal\n";
    for (double F : fgrid(0.25, 1.0, 151)) {
      os << fmt_double(F) << "," << fmt_double(pcs_xz_point_F(F).f_out) << ","
         << fmt_double(bbpssw_recursive(F, 2).f_out) << ","
         << fmt_double(bbpssw_recursive(F, 3).f_out) << "," << fmt_double(F) << "\n";
    }
  } else if (name == "fig3b") {
    os << "F,rate_pcs_xz,rate_bbpssw_r3\n";
    for (double F : fgrid(0.25, 1.0, 151)) {
      os << fmt_double(F) << "," << fmt_double(pcs_xz_point_F(F).rate) << ","
         << fmt_double(bbpssw_recursive(F, 3).rate) << "\n";
    }
  } else if (name == "fig7a" || name == "fig7b") {
    Protection prot = name == "fig7a" ? Protection::Flying : Protection::FlyingAndMemory;
    os << "p_channel,pass_protected,fid_protected,fid_protected_err,"
          "pass_unprotected,fid_unprotected,fid_unprotected_err\n";
    for (double p : fgrid(0.0, 0.5, 11)) {
      McEstimate prot_est = estimate_bell_fidelity(
          with_gate_noise(build_swap_with_pcs(CheckMode::XZ, prot, p), 0.001, 0.01),
          shots, seed);
      McEstimate none_est = estimate_bell_fidelity(
          with_gate_noise(build_swap_with_pcs(CheckMode::None, Protection::None, p),
                          0.001, 0.01),
          shots, seed);
      os << fmt_double(p) << "," << fmt_double(prot_est.pass_rate) << ","
         << fmt_double(prot_est.fidelity) << "," << fmt_double(prot_est.fidelity_stderr)
         << "," << fmt_double(none_est.pass_rate) << "," << fmt_double(none_est.fidelity)
         << "," << fmt_double(none_est.fidelity_stderr) << "\n";
    }
  } else if (name == "fig8") {
    os << "p_channel,fid_r0,fid_r0_err,fid_r1,fid_r1_err,fid_r2,fid_r2_err\n";
    for (double p : fgrid(0.0, 0.5, 11)) {
      os << fmt_double(p);
      for (uint32_t r : {0u, 1u, 2u}) {
        McEstimate est = estimate_bell_fidelity(
            with_gate_noise(build_recursive_pcs(r, p, p), 0.001, 0.01), shots, seed);
        os << "," << fmt_double(est.fidelity) << "," << fmt_double(est.fidelity_stderr);
      }
      os << "\n";
    }
  } else {
    throw std::invalid_argument("unknown figure: " + name);
  }
  return os.str();
}

}  // namespace pcs

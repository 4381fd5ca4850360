#include "pcslab/engine.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace pcs {

namespace {

constexpr char kObsLetter[3] = {'X', 'Y', 'Z'};

struct CompiledConditions {
  // Per condition: indices into the measurement-order bit vector.
  std::vector<std::vector<size_t>> cond_bits;
  std::vector<int> cond_required;
  // Per frame rule: bit index, letter, qubit.
  struct Frame {
    size_t bit;
    char letter;
    uint32_t qubit;
  };
  std::vector<Frame> frames;
  std::map<std::string, size_t> bit_index;
  size_t n_bits = 0;
};

CompiledConditions compile_conditions(const Circuit& c) {
  CompiledConditions out;
  for (const auto& op : c.ops) {
    if (const auto* m = std::get_if<MeasureZ>(&op)) {
      out.bit_index[m->label] = out.n_bits++;
    }
  }
  for (const auto& op : c.ops) {
    if (const auto* p = std::get_if<ParityCondition>(&op)) {
      std::vector<size_t> bits;
      for (const auto& l : p->labels) bits.push_back(out.bit_index.at(l));
      out.cond_bits.push_back(std::move(bits));
      out.cond_required.push_back(p->required & 1);
    } else if (const auto* f = std::get_if<FrameRule>(&op)) {
      out.frames.push_back({out.bit_index.at(f->label), f->letter, f->qubit});
    }
  }
  return out;
}

PauliString frame_for_bits(const Circuit& c, const CompiledConditions& cc,
                           const std::vector<int>& bits) {
  PauliString frame = PauliString::identity(c.n_qubits);
  for (const auto& f : cc.frames) {
    if (bits[f.bit]) frame = frame * PauliString::single(c.n_qubits, f.qubit, f.letter);
  }
  return frame;
}

bool conditions_pass(const CompiledConditions& cc, const std::vector<int>& bits) {
  for (size_t k = 0; k < cc.cond_bits.size(); ++k) {
    int parity = 0;
    for (size_t b : cc.cond_bits[k]) parity ^= bits[b];
    if (parity != cc.cond_required[k]) return false;
  }
  return true;
}

int sample_pauli(const NoiseSite& s, Rng& rng) {
  double u = rng.next_double();
  double acc = 0;
  for (int i = 0; i < 3; ++i) {
    acc += s.probs[i];
    if (u < acc) return i;
  }
  return 3;
}

void apply_sampled_pauli(StabilizerTableau& t, uint32_t q, int which) {
  switch (which) {
    case 0: break;
    case 1: t.apply(Gate{GateKind::X, q}); break;
    case 2: t.apply(Gate{GateKind::Y, q}); break;
    case 3: t.apply(Gate{GateKind::Z, q}); break;
  }
}

ShotRecord run_shot_impl(const Circuit& c, const CompiledConditions& cc, Rng& rng) {
  StabilizerTableau t(c.n_qubits);
  ShotRecord rec;
  rec.bits.reserve(cc.n_bits);
  for (const auto& op : c.ops) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      t.apply(*g);
    } else if (const auto* s = std::get_if<NoiseSite>(&op)) {
      apply_sampled_pauli(t, s->qubit, sample_pauli(*s, rng));
    } else if (const auto* m = std::get_if<MeasureZ>(&op)) {
      rec.bits.push_back(t.measure_z(m->qubit, rng));
    }
  }
  rec.passed = conditions_pass(cc, rec.bits);
  rec.frame = frame_for_bits(c, cc, rec.bits);
  return rec;
}

// Measures the two-qubit observable L(x)L on the data pair of a finished shot
// and returns the frame-corrected +/-1 eigenvalue.
int measure_observable(StabilizerTableau& t, const Circuit& c, char letter,
                       const PauliString& frame, Rng& rng) {
  auto [d0, d1] = *c.data_qubits;
  for (uint32_t q : {d0, d1}) {
    if (letter == 'Y') {
      // S^dag then H maps Y to the measured Z axis.
      t.apply(Gate{GateKind::Z, q});
      t.apply(Gate{GateKind::S, q});
      t.apply(Gate{GateKind::H, q});
    } else if (letter == 'X') {
      t.apply(Gate{GateKind::H, q});
    }
  }
  int parity = t.measure_z(d0, rng) ^ t.measure_z(d1, rng);
  PauliString obs = PauliString::identity(c.n_qubits);
  obs.set_letter(d0, letter);
  obs.set_letter(d1, letter);
  if (!frame.commutes_with(obs)) parity ^= 1;
  return parity ? -1 : 1;
}

}  // namespace

ShotRecord run_shot(const Circuit& c, Rng& rng) {
  c.validate();
  CompiledConditions cc = compile_conditions(c);
  return run_shot_impl(c, cc, rng);
}

McEstimate estimate_bell_fidelity(const Circuit& c, uint64_t n_shots,
                                  uint64_t seed, unsigned n_threads) {
  c.validate();
  if (!c.data_qubits) throw std::invalid_argument("circuit has no designated data pair");
  if (n_shots == 0) throw std::invalid_argument("n_shots must be positive");
  CompiledConditions cc = compile_conditions(c);

  struct Tally {
    uint64_t n_pass = 0;
    std::array<uint64_t, 3> obs_shots{};
    std::array<int64_t, 3> obs_sum{};
  };

  auto run_range = [&](uint64_t lo, uint64_t hi, Tally& tally) {
    for (uint64_t i = lo; i < hi; ++i) {
      Rng rng = Rng::for_shot(seed, i);
      StabilizerTableau t(c.n_qubits);
      std::vector<int> bits;
      bits.reserve(cc.n_bits);
      for (const auto& op : c.ops) {
        if (const auto* g = std::get_if<Gate>(&op)) {
          t.apply(*g);
        } else if (const auto* s = std::get_if<NoiseSite>(&op)) {
          apply_sampled_pauli(t, s->qubit, sample_pauli(*s, rng));
        } else if (const auto* m = std::get_if<MeasureZ>(&op)) {
          bits.push_back(t.measure_z(m->qubit, rng));
        }
      }
      if (!conditions_pass(cc, bits)) continue;
      tally.n_pass++;
      int which = static_cast<int>(i % 3);
      PauliString frame = frame_for_bits(c, cc, bits);
      int eig = measure_observable(t, c, kObsLetter[which], frame, rng);
      tally.obs_shots[which]++;
      tally.obs_sum[which] += eig;
    }
  };

  unsigned hw = n_threads ? n_threads : std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  uint64_t chunk = (n_shots + hw - 1) / hw;
  std::vector<Tally> tallies(hw);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < hw; ++w) {
    uint64_t lo = w * chunk, hi = std::min<uint64_t>(n_shots, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back(run_range, lo, hi, std::ref(tallies[w]));
  }
  for (auto& th : workers) th.join();

  Tally total;
  for (const auto& t : tallies) {
    total.n_pass += t.n_pass;
    for (int o = 0; o < 3; ++o) {
      total.obs_shots[o] += t.obs_shots[o];
      total.obs_sum[o] += t.obs_sum[o];
    }
  }

  McEstimate est;
  est.n_shots = n_shots;
  est.seed = seed;
  est.n_pass = total.n_pass;
  est.obs_shots = total.obs_shots;
  est.obs_sum = total.obs_sum;
  est.pass_rate = double(total.n_pass) / double(n_shots);
  est.pass_stderr = std::sqrt(est.pass_rate * (1.0 - est.pass_rate) / double(n_shots));
  if (total.n_pass == 0 || total.obs_shots[0] == 0 || total.obs_shots[1] == 0 ||
      total.obs_shots[2] == 0) {
    throw std::runtime_error("no postselected shots: Bell fidelity estimation impossible");
  }
  double mean[3], var_of_mean[3];
  for (int o = 0; o < 3; ++o) {
    mean[o] = double(total.obs_sum[o]) / double(total.obs_shots[o]);
    var_of_mean[o] = (1.0 - mean[o] * mean[o]) / double(total.obs_shots[o]);
  }
  est.fidelity = 0.25 * (1.0 + mean[0] - mean[1] + mean[2]);
  est.fidelity_stderr = 0.25 * std::sqrt(var_of_mean[0] + var_of_mean[1] + var_of_mean[2]);
  return est;
}

namespace {

// Reference parities of the noiseless circuit, obtained from an instrumented
// tableau run: one collector qubit per parity condition and one for the
// observable under test accumulate the relevant measurement bits, so their
// final Z-measurements are deterministic exactly when the parity is pinned.
struct NoiselessReference {
  std::vector<int> cond_value;   // noiseless parity per condition
  std::array<int, 3> obs_value;  // noiseless XX / YY / ZZ outcome parities
};

NoiselessReference noiseless_reference(const Circuit& c, const CompiledConditions& cc) {
  NoiselessReference ref;
  ref.cond_value.assign(cc.cond_bits.size(), 0);

  size_t n_cond = cc.cond_bits.size();
  uint32_t width = c.n_qubits + static_cast<uint32_t>(n_cond) + 1;
  if (width > 64) throw std::length_error("instrumented circuit exceeds 64 qubits");
  uint32_t obs_collector = c.n_qubits + static_cast<uint32_t>(n_cond);

  // cond_of_bit[b] -> condition indices containing measurement bit b.
  std::vector<std::vector<size_t>> cond_of_bit(cc.n_bits);
  for (size_t k = 0; k < cc.cond_bits.size(); ++k) {
    for (size_t b : cc.cond_bits[k]) cond_of_bit[b].push_back(k);
  }

  for (int which = 0; which < 3; ++which) {
    char letter = kObsLetter[which];
    PauliString obs = PauliString::identity(c.n_qubits);
    if (c.data_qubits) {
      obs.set_letter(c.data_qubits->first, letter);
      obs.set_letter(c.data_qubits->second, letter);
    }

    Rng rng(0x5eedULL + which);
    StabilizerTableau t(width);
    size_t bit = 0;
    for (const auto& op : c.ops) {
      if (const auto* g = std::get_if<Gate>(&op)) {
        t.apply(*g);
      } else if (const auto* m = std::get_if<MeasureZ>(&op)) {
        for (size_t k : cond_of_bit[bit]) {
          t.apply(Gate{GateKind::CX, m->qubit, c.n_qubits + static_cast<uint32_t>(k)});
        }
        // Frame rules fold their source bits into the observable parity when
        // the correction letter anticommutes with the observable.
        if (c.data_qubits) {
          for (const auto& f : cc.frames) {
            if (f.bit != bit) continue;
            PauliString corr = PauliString::single(c.n_qubits, f.qubit, f.letter);
            if (!corr.commutes_with(obs)) {
              t.apply(Gate{GateKind::CX, m->qubit, obs_collector});
            }
          }
        }
        t.measure_z(m->qubit, rng);
        ++bit;
      }
    }

    if (which == 0) {
      for (size_t k = 0; k < n_cond; ++k) {
        auto [value, deterministic] =
            t.measure_z_flagged(c.n_qubits + static_cast<uint32_t>(k), rng);
        if (!deterministic) {
          throw std::invalid_argument(
              "parity condition is not deterministic in the noiseless circuit");
        }
        ref.cond_value[k] = value;
      }
    }

    if (c.data_qubits) {
      auto [d0, d1] = *c.data_qubits;
      for (uint32_t q : {d0, d1}) {
        if (letter == 'Y') {
          t.apply(Gate{GateKind::Z, q});
          t.apply(Gate{GateKind::S, q});
          t.apply(Gate{GateKind::H, q});
        } else if (letter == 'X') {
          t.apply(Gate{GateKind::H, q});
        }
      }
      t.apply(Gate{GateKind::CX, d0, obs_collector});
      t.apply(Gate{GateKind::CX, d1, obs_collector});
      auto [value, deterministic] = t.measure_z_flagged(obs_collector, rng);
      if (!deterministic) {
        throw std::invalid_argument(
            "output observable parity is not deterministic in the noiseless circuit");
      }
      ref.obs_value[which] = value;
    } else {
      ref.obs_value[which] = 0;
    }
  }
  return ref;
}

}  // namespace

ExactResult enumerate_paths(const Circuit& c, uint64_t max_paths) {
  c.validate();
  CompiledConditions cc = compile_conditions(c);
  NoiselessReference ref = noiseless_reference(c, cc);

  size_t n_cond = cc.cond_bits.size();
  if (n_cond + 3 > 32) throw std::length_error("too many parity conditions");

  // Signature bit layout: [0, n_cond) condition flips, then XX, YY, ZZ flips.
  const uint32_t obs_bit0 = static_cast<uint32_t>(n_cond);

  PauliString obs_pauli[3];
  for (int o = 0; o < 3; ++o) {
    obs_pauli[o] = PauliString::identity(c.n_qubits);
    if (c.data_qubits) {
      obs_pauli[o].set_letter(c.data_qubits->first, kObsLetter[o]);
      obs_pauli[o].set_letter(c.data_qubits->second, kObsLetter[o]);
    }
  }

  std::vector<std::vector<size_t>> cond_of_bit(cc.n_bits);
  for (size_t k = 0; k < n_cond; ++k) {
    for (size_t b : cc.cond_bits[k]) cond_of_bit[b].push_back(k);
  }
  // For each measurement bit and observable: does a frame rule sourced at the
  // bit anticommute with the observable?
  std::vector<std::array<int, 3>> frame_weight(cc.n_bits, {0, 0, 0});
  for (const auto& f : cc.frames) {
    PauliString corr = PauliString::single(c.n_qubits, f.qubit, f.letter);
    for (int o = 0; o < 3; ++o) {
      if (!corr.commutes_with(obs_pauli[o])) frame_weight[f.bit][o] ^= 1;
    }
  }

  // Propagates a single-letter error from just after op index `start` and
  // returns its flip signature.
  auto propagate = [&](size_t start, uint32_t qubit, char letter) -> uint32_t {
    PauliString err = PauliString::single(c.n_qubits, qubit, letter);
    uint32_t sig = 0;
    size_t bit = 0;
    for (size_t i = 0; i < c.ops.size(); ++i) {
      if (const auto* m = std::get_if<MeasureZ>(&c.ops[i])) {
        if (i > start && err.x_bit(m->qubit)) {
          for (size_t k : cond_of_bit[bit]) sig ^= uint32_t(1) << k;
          for (int o = 0; o < 3; ++o) {
            if (frame_weight[bit][o]) sig ^= uint32_t(1) << (obs_bit0 + o);
          }
        }
        ++bit;
      } else if (i > start) {
        if (const auto* g = std::get_if<Gate>(&c.ops[i])) conjugate_by_gate(err, *g);
      }
    }
    for (int o = 0; o < 3; ++o) {
      if (!err.commutes_with(obs_pauli[o])) sig ^= uint32_t(1) << (obs_bit0 + o);
    }
    return sig;
  };

  struct Site {
    std::vector<double> probs;       // nonzero branches only
    std::vector<uint32_t> sigs;
  };
  std::vector<Site> sites;
  uint64_t total_paths = 1;
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const auto* s = std::get_if<NoiseSite>(&c.ops[i]);
    if (!s) continue;
    uint32_t sig_x = propagate(i, s->qubit, 'X');
    uint32_t sig_z = propagate(i, s->qubit, 'Z');
    uint32_t branch_sig[4] = {0, sig_x, sig_x ^ sig_z, sig_z};
    Site site;
    for (int b = 0; b < 4; ++b) {
      if (s->probs[b] > 0) {
        site.probs.push_back(s->probs[b]);
        site.sigs.push_back(branch_sig[b]);
      }
    }
    if (site.probs.empty()) continue;
    if (total_paths > max_paths / site.probs.size() + 1) {
      throw std::length_error("noise-path count exceeds enumeration budget");
    }
    total_paths *= site.probs.size();
    if (site.probs.size() > 1 || site.sigs[0] != 0) sites.push_back(std::move(site));
  }
  if (total_paths > max_paths) {
    throw std::length_error("noise-path count exceeds enumeration budget");
  }

  // A path passes iff none of its condition parities flip away from the
  // noiseless value (which noiseless_reference checked against `required`).
  uint32_t needed = 0;
  for (size_t k = 0; k < n_cond; ++k) {
    if (ref.cond_value[k] != cc.cond_required[k]) needed |= uint32_t(1) << k;
  }
  const uint32_t cond_mask = n_cond ? ((uint32_t(1) << n_cond) - 1) : 0;
  const double e_base[3] = {ref.obs_value[0] ? -1.0 : 1.0, ref.obs_value[1] ? -1.0 : 1.0,
                            ref.obs_value[2] ? -1.0 : 1.0};

  double pass_prob = 0.0;
  double fid_sum = 0.0;
  uint64_t n_paths = 0;

  std::vector<size_t> idx(sites.size(), 0);
  while (true) {
    double prob = 1.0;
    uint32_t sig = 0;
    for (size_t s = 0; s < sites.size(); ++s) {
      prob *= sites[s].probs[idx[s]];
      sig ^= sites[s].sigs[idx[s]];
    }
    ++n_paths;
    if ((sig & cond_mask) == needed) {
      pass_prob += prob;
      if (c.data_qubits) {
        double ex = e_base[0] * (((sig >> obs_bit0) & 1) ? -1.0 : 1.0);
        double ey = e_base[1] * (((sig >> (obs_bit0 + 1)) & 1) ? -1.0 : 1.0);
        double ez = e_base[2] * (((sig >> (obs_bit0 + 2)) & 1) ? -1.0 : 1.0);
        fid_sum += prob * 0.25 * (1.0 + ex - ey + ez);
      }
    }
    size_t s = 0;
    for (; s < sites.size(); ++s) {
      if (++idx[s] < sites[s].probs.size()) break;
      idx[s] = 0;
    }
    if (s == sites.size()) break;
  }

  ExactResult res;
  res.n_paths = n_paths;
  res.pass_prob = pass_prob;
  if (c.data_qubits && pass_prob > 0) {
    res.fidelity = fid_sum / pass_prob;
  } else {
    res.fidelity = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

std::vector<ErrorPath> enumerate_path_records(const Circuit& c, uint64_t max_paths) {
  c.validate();
  CompiledConditions cc = compile_conditions(c);
  NoiselessReference ref = noiseless_reference(c, cc);

  size_t n_cond = cc.cond_bits.size();
  std::vector<std::vector<size_t>> cond_of_bit(cc.n_bits);
  for (size_t k = 0; k < n_cond; ++k) {
    for (size_t b : cc.cond_bits[k]) cond_of_bit[b].push_back(k);
  }

  // Per-site condition-flip signatures for each Pauli branch.
  struct Site {
    std::array<uint32_t, 4> sigs{};
    std::array<double, 4> probs{};
  };
  auto propagate = [&](size_t start, uint32_t qubit, char letter) -> uint32_t {
    PauliString err = PauliString::single(c.n_qubits, qubit, letter);
    uint32_t sig = 0;
    size_t bit = 0;
    for (size_t i = 0; i < c.ops.size(); ++i) {
      if (const auto* m = std::get_if<MeasureZ>(&c.ops[i])) {
        if (i > start && err.x_bit(m->qubit)) {
          for (size_t k : cond_of_bit[bit]) sig ^= uint32_t(1) << k;
        }
        ++bit;
      } else if (i > start) {
        if (const auto* g = std::get_if<Gate>(&c.ops[i])) conjugate_by_gate(err, *g);
      }
    }
    return sig;
  };

  std::vector<Site> sites;
  uint64_t total = 1;
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const auto* s = std::get_if<NoiseSite>(&c.ops[i]);
    if (!s) continue;
    if (total > max_paths / 4 + 1) {
      throw std::length_error("noise-path count exceeds enumeration budget");
    }
    total *= 4;
    Site site;
    uint32_t sig_x = propagate(i, s->qubit, 'X');
    uint32_t sig_z = propagate(i, s->qubit, 'Z');
    site.sigs = {0, sig_x, sig_x ^ sig_z, sig_z};
    site.probs = s->probs;
    sites.push_back(site);
  }
  if (total > max_paths) throw std::length_error("noise-path count exceeds enumeration budget");

  uint32_t needed = 0;
  for (size_t k = 0; k < n_cond; ++k) {
    if (ref.cond_value[k] != cc.cond_required[k]) needed |= uint32_t(1) << k;
  }
  const uint32_t cond_mask = n_cond ? ((uint32_t(1) << n_cond) - 1) : 0;

  std::vector<ErrorPath> out;
  out.reserve(total);
  std::vector<uint8_t> idx(sites.size(), 0);
  while (true) {
    ErrorPath path;
    path.assignment.assign(idx.begin(), idx.end());
    path.probability = 1.0;
    uint32_t sig = 0;
    for (size_t s = 0; s < sites.size(); ++s) {
      path.probability *= sites[s].probs[idx[s]];
      sig ^= sites[s].sigs[idx[s]];
    }
    path.passed = (sig & cond_mask) == needed;
    out.push_back(std::move(path));
    size_t s = 0;
    for (; s < sites.size(); ++s) {
      if (++idx[s] < 4) break;
      idx[s] = 0;
    }
    if (s == sites.size()) break;
  }
  return out;
}

}  // namespace pcs

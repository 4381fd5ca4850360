#include "pcslab/protocols.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace pcs {

namespace {

std::array<double, 4> mixing_probs(double p) {
  return DepolarizingSpec{p, DepolConvention::Mixing}.pauli_probs();
}

// Controlled-P with Z-basis control `anc`; `reversed` mirrors the per-qubit
// order for right checks.
void add_controlled_pauli(Circuit& c, const PauliString& pauli, uint32_t anc,
                          bool reversed) {
  std::vector<uint32_t> qs;
  for (uint32_t q = 0; q < pauli.num_qubits(); ++q) {
    if (pauli.letter(q) != 'I') qs.push_back(q);
  }
  if (reversed) std::reverse(qs.begin(), qs.end());
  for (uint32_t q : qs) {
    switch (pauli.letter(q)) {
      case 'X':
        c.add_gate(GateKind::CX, anc, q);
        break;
      case 'Z':
        c.add_gate(GateKind::CZ, anc, q);
        break;
      case 'Y':
        // CY = S_q CX S_q^dag.
        c.add_gate(GateKind::Z, q);
        c.add_gate(GateKind::S, q);
        c.add_gate(GateKind::CX, anc, q);
        c.add_gate(GateKind::S, q);
        break;
    }
  }
}

void add_check_measurement(Circuit& c, uint32_t anc, const std::string& label) {
  c.add_gate(GateKind::H, anc);
  c.add_measure_z(anc, label);
  c.add_parity({label}, 0);
}

// Per-side check layout for the X&Z family.  Side ancillas are listed in
// order a1 (X check on the data), a2 (Z check on the data), then recursion
// pairs (a3 guards a1, a4 guards a2, a5 guards a3, ...).
struct SideWiring {
  uint32_t data;
  std::vector<uint32_t> ancillas;
};

// Left-block gates in time order: highest recursion level first, base Z
// check, base X check innermost.  The right block is the exact mirror.
std::vector<Gate> side_left_gates(const SideWiring& w, uint32_t r) {
  std::vector<Gate> gates;
  for (uint32_t level = r; level >= 1; --level) {
    uint32_t g0 = 2 * level;      // guards ancillas[2*level-2], [2*level-1]
    gates.push_back(Gate{GateKind::CZ, w.ancillas[g0], w.ancillas[g0 - 2]});
    gates.push_back(Gate{GateKind::CZ, w.ancillas[g0 + 1], w.ancillas[g0 - 1]});
  }
  gates.push_back(Gate{GateKind::CZ, w.ancillas[1], w.data});
  gates.push_back(Gate{GateKind::CX, w.ancillas[0], w.data});
  return gates;
}

void append_gates(Circuit& c, const std::vector<Gate>& gates, bool reversed) {
  if (!reversed) {
    for (const auto& g : gates) c.ops.push_back(g);
  } else {
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) c.ops.push_back(*it);
  }
}

// X&Z pair with r recursion levels; shared by the pair and recursion builders.
Circuit build_xz_family(uint32_t r, double p_half_a, double p_half_b) {
  uint32_t k = 2 + 2 * r;  // ancillas per side
  Circuit c;
  c.n_qubits = 2 + 2 * k;
  SideWiring side_a{0, {}}, side_b{1, {}};
  for (uint32_t i = 0; i < k; ++i) side_a.ancillas.push_back(2 + i);
  for (uint32_t i = 0; i < k; ++i) side_b.ancillas.push_back(2 + k + i);

  c.add_gate(GateKind::H, 0);
  c.add_gate(GateKind::CX, 0, 1);
  for (uint32_t a : side_a.ancillas) c.add_gate(GateKind::H, a);
  for (uint32_t a : side_b.ancillas) c.add_gate(GateKind::H, a);

  auto left_a = side_left_gates(side_a, r);
  auto left_b = side_left_gates(side_b, r);
  append_gates(c, left_a, false);
  append_gates(c, left_b, false);

  c.add_noise(0, mixing_probs(p_half_a));
  for (uint32_t a : side_a.ancillas) c.add_noise(a, mixing_probs(p_half_a));
  c.add_noise(1, mixing_probs(p_half_b));
  for (uint32_t a : side_b.ancillas) c.add_noise(a, mixing_probs(p_half_b));

  append_gates(c, left_b, true);
  append_gates(c, left_a, true);

  int label = 0;
  for (uint32_t a : side_a.ancillas) add_check_measurement(c, a, "ca" + std::to_string(label++));
  label = 0;
  for (uint32_t a : side_b.ancillas) add_check_measurement(c, a, "cb" + std::to_string(label++));

  c.data_qubits = {0, 1};
  c.validate();
  return c;
}

}  // namespace

Circuit build_bell_pair(uint32_t q0, uint32_t q1) {
  if (q0 == q1) throw std::invalid_argument("Bell pair needs distinct qubits");
  Circuit c;
  c.n_qubits = std::max(q0, q1) + 1;
  c.add_gate(GateKind::H, q0);
  c.add_gate(GateKind::CX, q0, q1);
  c.data_qubits = {q0, q1};
  return c;
}

Circuit build_pcs_sandwich(uint32_t n_qubits, const std::vector<CheckSpec>& checks,
                           const std::function<void(Circuit&)>& noise_between) {
  Circuit c;
  c.n_qubits = n_qubits;
  for (const auto& chk : checks) {
    if (chk.pauli.num_qubits() != n_qubits) {
      throw std::invalid_argument("check Pauli width mismatch");
    }
    if (chk.pauli.phase_exponent() != 0) {
      throw std::invalid_argument("check Pauli must carry phase +1");
    }
    if (chk.ancilla >= n_qubits || chk.pauli.letter(chk.ancilla) != 'I') {
      throw std::invalid_argument("check ancilla overlaps its own Pauli");
    }
    c.add_gate(GateKind::H, chk.ancilla);
  }
  for (const auto& chk : checks) add_controlled_pauli(c, chk.pauli, chk.ancilla, false);
  if (noise_between) noise_between(c);
  for (auto it = checks.rbegin(); it != checks.rend(); ++it) {
    add_controlled_pauli(c, it->pauli, it->ancilla, true);
  }
  for (size_t i = 0; i < checks.size(); ++i) {
    add_check_measurement(c, checks[i].ancilla, "chk" + std::to_string(i));
  }
  c.validate();
  return c;
}

Circuit build_pcs_x_pair(double p_half_a, double p_half_b) {
  Circuit c;
  c.n_qubits = 4;
  c.add_gate(GateKind::H, 0);
  c.add_gate(GateKind::CX, 0, 1);
  c.add_gate(GateKind::H, 2);
  c.add_gate(GateKind::H, 3);
  c.add_gate(GateKind::CX, 2, 0);
  c.add_gate(GateKind::CX, 3, 1);
  c.add_noise(0, mixing_probs(p_half_a));
  c.add_noise(2, mixing_probs(p_half_a));
  c.add_noise(1, mixing_probs(p_half_b));
  c.add_noise(3, mixing_probs(p_half_b));
  c.add_gate(GateKind::CX, 2, 0);
  c.add_gate(GateKind::CX, 3, 1);
  add_check_measurement(c, 2, "ca0");
  add_check_measurement(c, 3, "cb0");
  c.data_qubits = {0, 1};
  c.validate();
  return c;
}

Circuit build_pcs_xz_pair(double p_half_a, double p_half_b) {
  return build_xz_family(0, p_half_a, p_half_b);
}

Circuit build_recursive_pcs(uint32_t r, double p_half_a, double p_half_b) {
  return build_xz_family(r, p_half_a, p_half_b);
}

RecursiveCost recursive_pcs_cost(uint32_t r) {
  RecursiveCost cost;
  cost.total_qubits = 6 + 4 * r;
  cost.check_ancillas = 4 * (r + 1);
  cost.right_check_two_qubit_gates = 4 * (r + 1);
  return cost;
}

RecursiveCost count_recursive_cost(const Circuit& c, uint32_t r) {
  RecursiveCost cost{c.n_qubits, c.n_qubits - 2, 0};
  // Right-block gates are the two-qubit gates between the last noise site and
  // the first measurement.
  size_t last_noise = 0, first_meas = c.ops.size();
  for (size_t i = 0; i < c.ops.size(); ++i) {
    if (std::holds_alternative<NoiseSite>(c.ops[i])) last_noise = i;
    if (std::holds_alternative<MeasureZ>(c.ops[i]) && first_meas == c.ops.size()) {
      first_meas = i;
    }
  }
  for (size_t i = last_noise + 1; i < first_meas; ++i) {
    if (const auto* g = std::get_if<Gate>(&c.ops[i])) {
      if (is_two_qubit(g->kind)) cost.right_check_two_qubit_gates++;
    }
  }
  (void)r;
  return cost;
}

Circuit build_pcs_side_encoding(uint32_t r) {
  uint32_t k = 2 + 2 * r;
  Circuit c;
  c.n_qubits = 1 + k;
  SideWiring side{0, {}};
  for (uint32_t i = 0; i < k; ++i) side.ancillas.push_back(1 + i);
  append_gates(c, side_left_gates(side, r), false);
  c.validate();
  return c;
}

SideCircuit build_pcs_side_full(uint32_t r) {
  uint32_t k = 2 + 2 * r;
  SideCircuit out;
  Circuit& c = out.circuit;
  c.n_qubits = 1 + k;
  SideWiring side{0, {}};
  for (uint32_t i = 0; i < k; ++i) side.ancillas.push_back(1 + i);
  for (uint32_t a : side.ancillas) c.add_gate(GateKind::H, a);
  auto left = side_left_gates(side, r);
  append_gates(c, left, false);
  out.error_insertion_index = c.ops.size();
  append_gates(c, left, true);
  for (uint32_t i = 0; i < k; ++i) {
    add_check_measurement(c, side.ancillas[i], "a" + std::to_string(i + 1));
  }
  c.validate();
  return out;
}

Circuit build_swap_with_pcs(CheckMode mode, Protection prot, double p_channel) {
  // Layout: 0 = a0 (flying), 1 = a1 (memory), 2 = b0 (flying), 3 = b1
  // (memory); check ancillas appended per protected qubit.
  Circuit c;
  struct Wire {
    uint32_t x_anc = UINT32_MAX;
    uint32_t z_anc = UINT32_MAX;
  };
  std::vector<uint32_t> protected_qubits;
  if (prot != Protection::None && mode != CheckMode::None) {
    protected_qubits = {0, 2};
    if (prot == Protection::FlyingAndMemory) {
      protected_qubits.push_back(1);
      protected_qubits.push_back(3);
    }
  }
  uint32_t next = 4;
  std::vector<Wire> wires(4);
  for (uint32_t q : protected_qubits) {
    wires[q].x_anc = next++;
    if (mode == CheckMode::XZ) wires[q].z_anc = next++;
  }
  c.n_qubits = next;

  c.add_gate(GateKind::H, 0);
  c.add_gate(GateKind::CX, 0, 1);
  c.add_gate(GateKind::H, 2);
  c.add_gate(GateKind::CX, 2, 3);

  // Left checks at the origin nodes.
  for (uint32_t q : protected_qubits) {
    if (wires[q].z_anc != UINT32_MAX) c.add_gate(GateKind::H, wires[q].z_anc);
    c.add_gate(GateKind::H, wires[q].x_anc);
    if (wires[q].z_anc != UINT32_MAX) c.add_gate(GateKind::CZ, wires[q].z_anc, q);
    c.add_gate(GateKind::CX, wires[q].x_anc, q);
  }

  // Transit for flying qubits and their ancillas; memory qubits idle under
  // the same channel.
  auto probs = mixing_probs(p_channel);
  for (uint32_t q : {0u, 2u}) {
    c.add_noise(q, probs);
    if (wires[q].x_anc != UINT32_MAX) c.add_noise(wires[q].x_anc, probs);
    if (wires[q].z_anc != UINT32_MAX) c.add_noise(wires[q].z_anc, probs);
  }
  for (uint32_t q : {1u, 3u}) {
    c.add_noise(q, probs);
    if (wires[q].x_anc != UINT32_MAX) c.add_noise(wires[q].x_anc, probs);
    if (wires[q].z_anc != UINT32_MAX) c.add_noise(wires[q].z_anc, probs);
  }

  // Right checks (mirror order) and check measurements.
  int label = 0;
  for (auto it = protected_qubits.rbegin(); it != protected_qubits.rend(); ++it) {
    uint32_t q = *it;
    c.add_gate(GateKind::CX, wires[q].x_anc, q);
    if (wires[q].z_anc != UINT32_MAX) c.add_gate(GateKind::CZ, wires[q].z_anc, q);
  }
  for (uint32_t q : protected_qubits) {
    add_check_measurement(c, wires[q].x_anc, "chk" + std::to_string(label++));
    if (wires[q].z_anc != UINT32_MAX) {
      add_check_measurement(c, wires[q].z_anc, "chk" + std::to_string(label++));
    }
  }

  // Entanglement swap: Bell measurement on (a0, b0), frame on b1.
  c.add_gate(GateKind::CX, 0, 2);
  c.add_gate(GateKind::H, 0);
  c.add_measure_z(0, "bm_x");
  c.add_measure_z(2, "bm_z");
  c.add_frame("bm_x", 'Z', 3);
  c.add_frame("bm_z", 'X', 3);

  c.data_qubits = {1, 3};
  c.validate();
  return c;
}

Circuit build_teleported_pcs(double p_channel) {
  // Layout: 0 = a0, 1 = a1 (output), 2 = b0, 3 = b1 (output),
  //         4 = a2 (X check on a0), 5 = a3 (Z check on a0),
  //         6 = b2 (X check on b0), 7 = b3 (Z check on b0).
  Circuit c;
  c.n_qubits = 8;
  c.add_gate(GateKind::H, 0);
  c.add_gate(GateKind::CX, 0, 1);
  c.add_gate(GateKind::H, 2);
  c.add_gate(GateKind::CX, 2, 3);
  for (uint32_t a : {4u, 5u, 6u, 7u}) c.add_gate(GateKind::H, a);
  c.add_gate(GateKind::CZ, 5, 0);
  c.add_gate(GateKind::CX, 4, 0);
  c.add_gate(GateKind::CZ, 7, 2);
  c.add_gate(GateKind::CX, 6, 2);

  auto probs = mixing_probs(p_channel);
  for (uint32_t q : {0u, 4u, 5u, 2u, 6u, 7u}) c.add_noise(q, probs);

  // Bell measurements: w = (a0, b0), v = (a2, b2), u = (a3, b3); bit 1 is the
  // X-type outcome, bit 2 the Z-type outcome.
  auto bell_measure = [&c](uint32_t q0, uint32_t q1, const std::string& name) {
    c.add_gate(GateKind::CX, q0, q1);
    c.add_gate(GateKind::H, q0);
    c.add_measure_z(q0, name + "1");
    c.add_measure_z(q1, name + "2");
  };
  bell_measure(0, 2, "w");
  bell_measure(4, 6, "v");
  bell_measure(5, 7, "u");

  c.add_parity({"w1", "v1"}, 0);
  c.add_parity({"u1", "v2", "w2"}, 0);

  // Output frame on b1 from the stabilizer flow:
  //   X_{a1}X_{b1} sign = w1 + u2, Z_{a1}Z_{b1} sign = w2 + v2.
  c.add_frame("w1", 'Z', 3);
  c.add_frame("u2", 'Z', 3);
  c.add_frame("w2", 'X', 3);
  c.add_frame("v2", 'X', 3);

  c.data_qubits = {1, 3};
  c.validate();
  return c;
}

Circuit build_bbpssw_round(double f_in) {
  if (!(f_in >= 0.25 && f_in <= 1.0)) {
    throw std::domain_error("Werner fidelity must lie in [0.25, 1]");
  }
  // Layout: (0, 1) kept pair, (2, 3) sacrificed pair.
  Circuit c;
  c.n_qubits = 4;
  double w = (1.0 - f_in) / 3.0;
  std::array<double, 4> werner{f_in, w, w, w};
  c.add_gate(GateKind::H, 0);
  c.add_gate(GateKind::CX, 0, 1);
  c.add_gate(GateKind::H, 2);
  c.add_gate(GateKind::CX, 2, 3);
  c.add_noise(1, werner);
  c.add_noise(3, werner);
  c.add_gate(GateKind::CX, 0, 2);
  c.add_gate(GateKind::CX, 1, 3);
  c.add_measure_z(2, "ma");
  c.add_measure_z(3, "mb");
  c.add_parity({"ma", "mb"}, 0);
  c.data_qubits = {0, 1};
  c.validate();
  return c;
}

Circuit with_gate_noise(const Circuit& c, double p_1q, double p_2q) {
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.data_qubits = c.data_qubits;
  auto p1 = mixing_probs(p_1q);
  auto p2 = mixing_probs(p_2q);
  for (const auto& op : c.ops) {
    out.ops.push_back(op);
    if (const auto* g = std::get_if<Gate>(&op)) {
      if (is_two_qubit(g->kind)) {
        if (p_2q > 0) {
          out.add_noise(g->q0, p2);
          out.add_noise(g->q1, p2);
        }
      } else if (p_1q > 0) {
        out.add_noise(g->q0, p1);
      }
    }
  }
  out.validate();
  return out;
}

}  // namespace pcs

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcslab/pauli.hpp"

namespace pcs {

enum class GateKind : uint8_t { H, S, X, Y, Z, CX, CZ };

bool is_two_qubit(GateKind k);
const char* gate_name(GateKind k);

struct Gate {
  GateKind kind;
  uint32_t q0;
  uint32_t q1 = UINT32_MAX;  // second qubit for CX/CZ
};

/// Single-qubit Pauli channel: probabilities for I, X, Y, Z in that order.
/// Every noise process in this library is of this form.
struct NoiseSite {
  uint32_t qubit;
  std::array<double, 4> probs;

  void validate() const;
};

/// Z-basis measurement; the builders realize X-basis measurements as an H
/// followed by MeasureZ.  Labels name the classical bit.
struct MeasureZ {
  uint32_t qubit;
  std::string label;
};

/// Postselection rule: XOR of the named bits must equal `required`.
struct ParityCondition {
  std::vector<std::string> labels;
  int required = 0;
};

/// Classical Pauli-frame rule: if bit `label` is 1, the output frame picks up
/// `letter` on `qubit`.  Frames are never applied as physical gates.
struct FrameRule {
  std::string label;
  char letter;
  uint32_t qubit;
};

using CircuitOp = std::variant<Gate, NoiseSite, MeasureZ, ParityCondition, FrameRule>;

struct Circuit {
  uint32_t n_qubits = 0;
  std::vector<CircuitOp> ops;
  /// Designated output pair for Bell-fidelity estimation.
  std::optional<std::pair<uint32_t, uint32_t>> data_qubits;

  void add_gate(GateKind k, uint32_t q0, uint32_t q1 = UINT32_MAX);
  void add_noise(uint32_t qubit, const std::array<double, 4>& probs);
  void add_measure_z(uint32_t qubit, std::string label);
  void add_parity(std::vector<std::string> labels, int required);
  void add_frame(std::string label, char letter, uint32_t qubit);

  size_t num_noise_sites() const;
  size_t num_measurements() const;
  std::vector<std::string> measurement_labels() const;

  /// Throws std::invalid_argument on out-of-range indices, duplicate labels,
  /// or parity conditions naming unknown/future labels.
  void validate() const;
};

/// Conjugates a signed Pauli by a Clifford gate: P -> G P G^dag.
void conjugate_by_gate(PauliString& p, const Gate& g);

/// Line-oriented text form (one op per line); round-trips exactly.
std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);

}  // namespace pcs

#pragma once

#include <cstdint>
#include <vector>

#include "pcslab/circuit.hpp"
#include "pcslab/pauli.hpp"
#include "pcslab/rng.hpp"

namespace pcs {

/// Aaronson-Gottesman stabilizer tableau over up to 64 qubits: n destabilizer
/// rows followed by n stabilizer rows, each a sign bit plus X/Z masks.
/// Initial state is |0...0>.
class StabilizerTableau {
 public:
  explicit StabilizerTableau(uint32_t n);

  uint32_t num_qubits() const { return n_; }

  void apply(const Gate& g);
  void apply_gate(GateKind k, uint32_t q0, uint32_t q1 = UINT32_MAX);
  /// Conjugates the state by a (Hermitian) Pauli; only row signs change.
  void apply_pauli(const PauliString& p);

  /// Z-basis measurement.  Deterministic outcomes never consume randomness.
  int measure_z(uint32_t qubit, Rng& rng);
  /// Like measure_z but reports whether the outcome was forced.
  std::pair<int, bool> measure_z_flagged(uint32_t qubit, Rng& rng);

  /// Returns +1/-1 when `op` (a Hermitian Pauli) is in +/-(stabilizer group),
  /// 0 when the measurement of `op` would be random.
  int expectation(const PauliString& op) const;

  PauliString stabilizer_row(uint32_t i) const;
  PauliString destabilizer_row(uint32_t i) const;

  /// Verifies the symplectic pairing of all rows; throws std::logic_error.
  void check_invariants() const;

 private:
  struct Row {
    uint64_t x = 0;
    uint64_t z = 0;
    uint8_t phase = 0;  // i^phase, must stay in {0, 2}
  };

  static void row_mult(Row& dst, const Row& src);  // dst <- dst * src
  PauliString row_to_pauli(const Row& r) const;

  uint32_t n_;
  std::vector<Row> rows_;  // [0, n): destabilizers, [n, 2n): stabilizers
};

}  // namespace pcs

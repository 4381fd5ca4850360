#pragma once

#include <functional>
#include <vector>

#include "pcslab/channels.hpp"
#include "pcslab/circuit.hpp"

namespace pcs {

/// Circuit builders for the network error-detection protocols.
///
/// Check realization used throughout: a check ancilla is prepared in |+>
/// (H from |0>), couples to its targets through Z-basis-controlled Pauli
/// gates before and after the protected region, and is measured in the X
/// basis (H then MeasureZ) with required outcome 0.  In this realization an
/// X fault on a check ancilla inside the protected region passes undetected
/// and deposits the check Pauli on the data, while a Z fault flips the check.
///
/// Recursion couples each new level to the previous level's ancillas through
/// CZ gates: that is the conjugate-frame image of protecting those ancillas
/// with X checks, and it is what yields the distance-2 code family with the
/// single weight-4 generator (see code_analysis tests).

enum class CheckMode { None, X, XZ };
enum class Protection { None, Flying, FlyingAndMemory };

/// H(q0) then CX(q0, q1); data pair = (q0, q1).
Circuit build_bell_pair(uint32_t q0, uint32_t q1);

/// A check with Pauli `pauli` (identity letters skipped, phase +1) controlled
/// on `ancilla`.  The ancilla may not overlap the pauli's support.
struct CheckSpec {
  PauliString pauli;
  uint32_t ancilla;
};

/// Generic sandwich: prepares every check ancilla, lays down the left checks
/// in list order, calls `noise_between` to deposit the noise region, mirrors
/// the right checks in reverse order, and measures each ancilla in the X
/// basis with a required-0 parity condition (labels "chk0", "chk1", ...).
Circuit build_pcs_sandwich(uint32_t n_qubits, const std::vector<CheckSpec>& checks,
                           const std::function<void(Circuit&)>& noise_between);

/// EPR pair with an X check on each half (4 qubits: data 0/1, ancillas 2/3).
/// `p_half_a` depolarizes qubit 0 and its ancilla, `p_half_b` qubit 1 and its
/// ancilla (Mixing convention), all in one layer between the checks.
Circuit build_pcs_x_pair(double p_half_a, double p_half_b);

/// EPR pair with X and Z checks on each half (6 qubits).
Circuit build_pcs_xz_pair(double p_half_a, double p_half_b);

/// X&Z pair plus r recursion levels (qubits: 6 + 4r).
Circuit build_recursive_pcs(uint32_t r, double p_half_a, double p_half_b);

struct RecursiveCost {
  uint32_t total_qubits;
  uint32_t check_ancillas;               // both sides
  uint32_t right_check_two_qubit_gates;  // both sides
};
RecursiveCost recursive_pcs_cost(uint32_t r);
/// Actual counts from a built circuit (cross-check of the closed form).
RecursiveCost count_recursive_cost(const Circuit& c, uint32_t r);

/// Single-side check block (data qubit 0, ancillas 1..2+2r in order: X check,
/// Z check, then recursion pairs).  Gates only, no preps or measurements;
/// ancillas are taken to start in |+>.  This is the encoding map of the
/// associated stabilizer code.
Circuit build_pcs_side_encoding(uint32_t r);

/// Full single-side circuit: preps, left block, an optional error slot
/// (returned index marks where pre-right-check errors act), right block,
/// X-basis ancilla measurements labeled "a1", "a2", ....
struct SideCircuit {
  Circuit circuit;
  size_t error_insertion_index;  // ops index where injected errors belong
};
SideCircuit build_pcs_side_full(uint32_t r);

/// Three-node entanglement swap A-C-B.  Every transmitted qubit (including
/// check ancillas) traverses the depolarizing channel `p_channel`; memory
/// qubits idle under the same channel.  `mode` selects the checks placed on
/// protected qubits, `prot` selects which qubits are protected.  Output pair
/// is (a1, b1) with Bell-outcome frame corrections.
Circuit build_swap_with_pcs(CheckMode mode, Protection prot, double p_channel);

/// Swap variant where the right checks are replaced by Bell measurements
/// across the check ancillas.  Bit table (bit 1 = X-type outcome, bit 2 =
/// Z-type outcome of each Bell measurement):
///   w = data pair (a0, b0), v = X-check ancillas (a2, b2),
///   u = Z-check ancillas (a3, b3).
/// Postselection: w1 + v1 = 0 and u1 + v2 + w2 = 0.
Circuit build_teleported_pcs(double p_channel);

/// One purification round on two EPR pairs prepared with Werner noise of
/// fidelity `f_in` (exact Werner form via a Bell-basis mixing site on one
/// half of each pair): bilateral CXs, Z measurements on the sacrificed pair,
/// keep when the outcomes coincide.
Circuit build_bbpssw_round(double f_in);

/// Inserts a Mixing-convention depolarizing site after every gate target:
/// strength p_1q after single-qubit gates, independent p_2q sites on both
/// qubits of two-qubit gates.
Circuit with_gate_noise(const Circuit& c, double p_1q, double p_2q);

}  // namespace pcs

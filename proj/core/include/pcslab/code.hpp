#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pcslab/circuit.hpp"
#include "pcslab/pauli.hpp"

namespace pcs {

/// Stabilizer code extracted from an encoding circuit: generators plus one
/// logical qubit's operators.
struct CodeSpec {
  uint32_t n = 0;
  uint32_t k = 0;
  std::vector<PauliString> generators;
  PauliString logical_x;
  PauliString logical_z;

  /// Commutation/independence checks; throws std::logic_error on violation.
  void validate() const;
};

/// Conjugates the initial stabilizers through a Clifford gate fragment whose
/// ancillas (every qubit but `data_qubit`) start in |+>: the images of the
/// ancilla X operators become the generators, the images of the data X / Z
/// become the logicals.
CodeSpec extract_code(const Circuit& encoding_fragment, uint32_t data_qubit);

/// True iff `p` (phase ignored) lies in the group generated by `gens`.
bool in_group(const std::vector<PauliString>& gens, const PauliString& p);

/// GF(2) symplectic rank of the spanned group.
uint32_t symplectic_rank(const std::vector<PauliString>& gens);

struct DistanceResult {
  /// Set when a minimum-weight logical was found within the cap.
  std::optional<uint32_t> distance;
  uint32_t searched_up_to = 0;
  /// A witness logical operator of weight == distance, when found.
  std::optional<PauliString> witness;
};

/// Exhaustive search over Paulis of weight <= cap for operators commuting
/// with every generator but lying outside the generator group.
DistanceResult distance(const CodeSpec& code, uint32_t cap);

struct GeneratingSet {
  std::vector<PauliString> generators;
  uint32_t max_weight = 0;
};

/// Greedy minimum-max-weight generating set drawn from products of up to
/// `product_budget` of the extracted generators (matroid greedy by weight;
/// single generators win ties against products).
GeneratingSet min_weight_generating_set(const CodeSpec& code, uint32_t product_budget = 3);

struct CssResult {
  bool is_css = false;
  std::vector<PauliString> transformed;  // pure-type basis when is_css
};

/// Conjugates the generators by H on `h_pattern` (out-of-range indices are
/// ignored) and reports whether a generating set of pure X-type and pure
/// Z-type elements exists.
CssResult css_equivalence_check(const CodeSpec& code, const std::set<uint32_t>& h_pattern);

/// The documented H pattern for the recursive X&Z code family: ancilla index
/// pairs (2, 3), (6, 7), (10, 11), ... clipped to the code size (qubit 0 is
/// the data, ancilla a_i is qubit i).
std::set<uint32_t> css_h_pattern(uint32_t r);

struct SyndromeTable {
  uint32_t n_checks = 0;
  /// Key bit i corresponds to check ancilla a_{i+1}; value lists every error
  /// (inserted before the right checks) with that syndrome.
  std::map<uint32_t, std::vector<PauliString>> by_syndrome;

  std::string syndrome_string(uint32_t key) const;
};

/// Exhaustive syndrome map of the full single-side check circuit for
/// recursion level r over all errors of weight <= max_weight.
SyndromeTable syndrome_table(uint32_t r, uint32_t max_weight);

/// Syndrome of one error in the full side circuit (bit i = ancilla a_{i+1}).
uint32_t syndrome_of(uint32_t r, const PauliString& error);

}  // namespace pcs

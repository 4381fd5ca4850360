#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <Eigen/Dense>

namespace pcs {

/// A signed n-qubit Pauli operator in symplectic form.
///
/// Qubit 0 is the leftmost tensor factor everywhere in this library; for a
/// dense matrix this means qubit 0 owns the most significant bit of the basis
/// index.  Per-qubit letters are encoded as bit pairs (x, z) in the masks
/// `xs`/`zs`: I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).  The overall sign is an
/// exponent of i modulo 4, so multiplication stays in exact integer
/// arithmetic.  Strings are limited to 64 qubits (mask width); the dense
/// ceilings used elsewhere sit far below that.
class PauliString {
 public:
  PauliString() : n_(1), xs_(0), zs_(0), phase_(0) {}
  PauliString(uint32_t n, uint64_t xs, uint64_t zs, uint8_t phase_exponent = 0);

  static PauliString identity(uint32_t n);
  /// Single-letter string, e.g. single(5, 2, 'Y') == IIYII.
  static PauliString single(uint32_t n, uint32_t qubit, char letter);
  /// Parses "[+|-|+i|-i|i]{I,X,Y,Z}+", e.g. "-iXZY".  Round-trips with str().
  static PauliString from_string(std::string_view text);

  uint32_t num_qubits() const { return n_; }
  uint64_t xs() const { return xs_; }
  uint64_t zs() const { return zs_; }
  /// Exponent k of the global phase i^k, in {0,1,2,3}.
  uint8_t phase_exponent() const { return phase_; }

  bool x_bit(uint32_t q) const { return (xs_ >> q) & 1u; }
  bool z_bit(uint32_t q) const { return (zs_ >> q) & 1u; }
  /// Letter at qubit q as one of 'I','X','Y','Z' (sign not included).
  char letter(uint32_t q) const;
  void set_letter(uint32_t q, char letter);

  bool is_identity_letters() const { return xs_ == 0 && zs_ == 0; }

  /// Operator product this * rhs with exact phase tracking.
  PauliString operator*(const PauliString& rhs) const;
  bool operator==(const PauliString& rhs) const = default;

  bool commutes_with(const PauliString& rhs) const;
  /// Number of non-identity tensor factors.
  uint32_t weight() const;

  PauliString adjoint() const;

  std::string str() const;

  /// Dense 2^n x 2^n matrix (Kronecker product of letters times i^phase).
  /// Throws if n exceeds `max_qubits` (memory guard).
  Eigen::MatrixXcd to_matrix(uint32_t max_qubits = 14) const;

 private:
  uint32_t n_;
  uint64_t xs_;
  uint64_t zs_;
  uint8_t phase_;  // i^phase_
};

std::ostream& operator<<(std::ostream& os, const PauliString& p);

}  // namespace pcs

#include "pcslab/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace pcs {

StabilizerTableau::StabilizerTableau(uint32_t n) : n_(n) {
  if (n == 0 || n > 64) throw std::invalid_argument("tableau width must be in [1, 64]");
  rows_.resize(2 * size_t(n));
  for (uint32_t i = 0; i < n; ++i) {
    rows_[i].x = uint64_t(1) << i;       // destabilizer X_i
    rows_[n + i].z = uint64_t(1) << i;   // stabilizer Z_i
  }
}

void StabilizerTableau::row_mult(Row& dst, const Row& src) {
  uint64_t x1 = dst.x, z1 = dst.z, x2 = src.x, z2 = src.z;
  uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
  uint64_t minus = (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2) | (x1 & ~z1 & ~x2 & z2);
  int k = std::popcount(plus) - std::popcount(minus);
  dst.phase = static_cast<uint8_t>((dst.phase + src.phase + (k & 3) + 4) & 3);
  dst.x ^= x2;
  dst.z ^= z2;
}

PauliString StabilizerTableau::row_to_pauli(const Row& r) const {
  return PauliString(n_, r.x, r.z, r.phase);
}

void StabilizerTableau::apply(const Gate& g) {
  uint64_t b0 = uint64_t(1) << g.q0;
  switch (g.kind) {
    case GateKind::H:
      for (auto& r : rows_) {
        bool x = r.x & b0, z = r.z & b0;
        if (x && z) r.phase ^= 2;
        r.x = (r.x & ~b0) | (z ? b0 : 0);
        r.z = (r.z & ~b0) | (x ? b0 : 0);
      }
      break;
    case GateKind::S:
      for (auto& r : rows_) {
        if (r.x & b0) {
          if (r.z & b0) r.phase ^= 2;
          r.z ^= b0;
        }
      }
      break;
    case GateKind::X:
      for (auto& r : rows_) {
        if (r.z & b0) r.phase ^= 2;
      }
      break;
    case GateKind::Y:
      for (auto& r : rows_) {
        if (bool(r.x & b0) != bool(r.z & b0)) r.phase ^= 2;
      }
      break;
    case GateKind::Z:
      for (auto& r : rows_) {
        if (r.x & b0) r.phase ^= 2;
      }
      break;
    case GateKind::CX: {
      uint64_t b1 = uint64_t(1) << g.q1;
      for (auto& r : rows_) {
        bool xc = r.x & b0, zc = r.z & b0, xt = r.x & b1, zt = r.z & b1;
        if (xc && zt && (xt == zc)) r.phase ^= 2;
        if (xc) r.x ^= b1;
        if (zt) r.z ^= b0;
      }
      break;
    }
    case GateKind::CZ: {
      uint64_t b1 = uint64_t(1) << g.q1;
      for (auto& r : rows_) {
        bool xc = r.x & b0, zc = r.z & b0, xt = r.x & b1, zt = r.z & b1;
        if (xc && xt && (zc != zt)) r.phase ^= 2;
        if (xc) r.z ^= b1;
        if (xt) r.z ^= b0;
      }
      break;
    }
  }
}

void StabilizerTableau::apply_gate(GateKind k, uint32_t q0, uint32_t q1) {
  if (q0 >= n_ || (is_two_qubit(k) && (q1 >= n_ || q1 == q0))) {
    throw std::out_of_range("gate qubit index out of range");
  }
  apply(Gate{k, q0, q1});
}

void StabilizerTableau::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli width mismatch");
  for (auto& r : rows_) {
    int sym = std::popcount(r.x & p.zs()) + std::popcount(r.z & p.xs());
    if (sym & 1) r.phase ^= 2;
  }
}

std::pair<int, bool> StabilizerTableau::measure_z_flagged(uint32_t qubit, Rng& rng) {
  if (qubit >= n_) throw std::out_of_range("measured qubit out of range");
  uint64_t bq = uint64_t(1) << qubit;

  uint32_t p = UINT32_MAX;
  for (uint32_t i = n_; i < 2 * n_; ++i) {
    if (rows_[i].x & bq) {
      p = i;
      break;
    }
  }

  if (p != UINT32_MAX) {
    // Random outcome: reduce all other anticommuting rows by row p, then
    // replace (destab, stab) at p with (old row p, +/- Z_q).
    Row old = rows_[p];
    for (uint32_t i = 0; i < 2 * n_; ++i) {
      if (i != p && (rows_[i].x & bq)) row_mult(rows_[i], old);
    }
    int outcome = rng.next_bit() ? 1 : 0;
    rows_[p - n_] = old;
    rows_[p] = Row{0, bq, static_cast<uint8_t>(outcome ? 2 : 0)};
    return {outcome, false};
  }

  // Deterministic: accumulate stabilizer rows flagged by the destabilizers.
  Row scratch{};
  for (uint32_t i = 0; i < n_; ++i) {
    if (rows_[i].x & bq) row_mult(scratch, rows_[n_ + i]);
  }
  if (scratch.x != 0 || scratch.z != bq || (scratch.phase & 1)) {
    throw std::logic_error("deterministic measurement reduction failed");
  }
  return {scratch.phase == 2 ? 1 : 0, true};
}

int StabilizerTableau::measure_z(uint32_t qubit, Rng& rng) {
  return measure_z_flagged(qubit, rng).first;
}

int StabilizerTableau::expectation(const PauliString& op) const {
  if (op.num_qubits() != n_) throw std::invalid_argument("Pauli width mismatch");
  // op is in the stabilizer group iff it commutes with every stabilizer row;
  // then its sign falls out of the destabilizer decomposition.
  for (uint32_t i = n_; i < 2 * n_; ++i) {
    int sym = std::popcount(rows_[i].x & op.zs()) + std::popcount(rows_[i].z & op.xs());
    if (sym & 1) return 0;
  }
  Row scratch{};
  for (uint32_t i = 0; i < n_; ++i) {
    int sym = std::popcount(rows_[i].x & op.zs()) + std::popcount(rows_[i].z & op.xs());
    if (sym & 1) row_mult(scratch, rows_[n_ + i]);
  }
  if (scratch.x != op.xs() || scratch.z != op.zs()) {
    throw std::logic_error("stabilizer decomposition failed in expectation()");
  }
  uint8_t rel = static_cast<uint8_t>((scratch.phase - op.phase_exponent() + 4) & 3);
  if (rel & 1) throw std::logic_error("non-Hermitian sign in expectation()");
  return rel == 0 ? 1 : -1;
}

PauliString StabilizerTableau::stabilizer_row(uint32_t i) const {
  if (i >= n_) throw std::out_of_range("stabilizer row index");
  return row_to_pauli(rows_[n_ + i]);
}

PauliString StabilizerTableau::destabilizer_row(uint32_t i) const {
  if (i >= n_) throw std::out_of_range("destabilizer row index");
  return row_to_pauli(rows_[i]);
}

void StabilizerTableau::check_invariants() const {
  auto anticommutes = [](const Row& a, const Row& b) {
    return ((std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1) != 0;
  };
  for (uint32_t i = 0; i < n_; ++i) {
    for (uint32_t j = 0; j < n_; ++j) {
      if (anticommutes(rows_[n_ + i], rows_[n_ + j])) {
        throw std::logic_error("stabilizer rows do not commute");
      }
      if (anticommutes(rows_[i], rows_[j])) {
        throw std::logic_error("destabilizer rows do not commute");
      }
      bool want = (i == j);
      if (anticommutes(rows_[i], rows_[n_ + j]) != want) {
        throw std::logic_error("destabilizer/stabilizer pairing broken");
      }
    }
  }
  for (const auto& r : rows_) {
    if (r.phase & 1) throw std::logic_error("tableau row with imaginary sign");
  }
}

}  // namespace pcs

#include "pcslab/pauli.hpp"

#include <bit>
#include <complex>
#include <ostream>
#include <stdexcept>

namespace pcs {

namespace {
constexpr uint32_t kMaxWidth = 64;

void check_width(uint32_t n) {
  if (n == 0 || n > kMaxWidth) {
    throw std::invalid_argument("PauliString width must be in [1, 64], got " +
                                std::to_string(n));
  }
}
}  // namespace

PauliString::PauliString(uint32_t n, uint64_t xs, uint64_t zs, uint8_t phase_exponent)
    : n_(n), xs_(xs), zs_(zs), phase_(phase_exponent & 3u) {
  check_width(n);
  if (n < kMaxWidth) {
    uint64_t mask = (uint64_t(1) << n) - 1;
    if ((xs_ & ~mask) || (zs_ & ~mask)) {
      throw std::invalid_argument("PauliString bit masks exceed qubit count");
    }
  }
}

PauliString PauliString::identity(uint32_t n) { return PauliString(n, 0, 0, 0); }

PauliString PauliString::single(uint32_t n, uint32_t qubit, char letter) {
  check_width(n);
  if (qubit >= n) throw std::out_of_range("qubit index out of range");
  PauliString p = identity(n);
  p.set_letter(qubit, letter);
  return p;
}

char PauliString::letter(uint32_t q) const {
  bool x = x_bit(q), z = z_bit(q);
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set_letter(uint32_t q, char letter) {
  if (q >= n_) throw std::out_of_range("qubit index out of range");
  uint64_t bit = uint64_t(1) << q;
  xs_ &= ~bit;
  zs_ &= ~bit;
  switch (letter) {
    case 'I': break;
    case 'X': xs_ |= bit; break;
    case 'Y': xs_ |= bit; zs_ |= bit; break;
    case 'Z': zs_ |= bit; break;
    default:
      throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
}

PauliString PauliString::from_string(std::string_view text) {
  uint8_t phase = 0;
  size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') phase = 2;
    ++i;
  }
  if (i < text.size() && text[i] == 'i') {
    phase = (phase + 1) & 3u;
    ++i;
  }
  std::string_view letters = text.substr(i);
  if (letters.empty()) throw std::invalid_argument("empty Pauli string");
  PauliString p(static_cast<uint32_t>(letters.size()), 0, 0, phase);
  for (uint32_t q = 0; q < letters.size(); ++q) p.set_letter(q, letters[q]);
  return p;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (n_ != rhs.n_) {
    throw std::invalid_argument("PauliString size mismatch: " + std::to_string(n_) +
                                " vs " + std::to_string(rhs.n_));
  }
  // Per-qubit letter products contribute +/- i factors: XY=iZ, YZ=iX, ZX=iY
  // and the reverse orders pick up -i.  Count both classes with masks.
  uint64_t x1 = xs_, z1 = zs_, x2 = rhs.xs_, z2 = rhs.zs_;
  uint64_t plus = (x1 & ~z1 & x2 & z2)    // X*Y
                | (x1 & z1 & ~x2 & z2)    // Y*Z
                | (~x1 & z1 & x2 & ~z2);  // Z*X
  uint64_t minus = (x1 & z1 & x2 & ~z2)   // Y*X
                 | (~x1 & z1 & x2 & z2)   // Z*Y
                 | (x1 & ~z1 & ~x2 & z2); // X*Z
  int k = std::popcount(plus) - std::popcount(minus);
  uint8_t phase = static_cast<uint8_t>((phase_ + rhs.phase_ + (k & 3) + 4) & 3);
  return PauliString(n_, x1 ^ x2, z1 ^ z2, phase);
}

bool PauliString::commutes_with(const PauliString& rhs) const {
  if (n_ != rhs.n_) {
    throw std::invalid_argument("PauliString size mismatch in commutes_with");
  }
  int sym = std::popcount(xs_ & rhs.zs_) + std::popcount(zs_ & rhs.xs_);
  return (sym & 1) == 0;
}

uint32_t PauliString::weight() const {
  return static_cast<uint32_t>(std::popcount(xs_ | zs_));
}

PauliString PauliString::adjoint() const {
  // Hermitian letters; only the scalar conjugates: (i^k)* = i^{-k}.
  return PauliString(n_, xs_, zs_, static_cast<uint8_t>((4 - phase_) & 3));
}

std::string PauliString::str() const {
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  std::string out = prefix[phase_];
  for (uint32_t q = 0; q < n_; ++q) out += letter(q);
  return out;
}

Eigen::MatrixXcd PauliString::to_matrix(uint32_t max_qubits) const {
  if (n_ > max_qubits) {
    throw std::length_error("PauliString::to_matrix: " + std::to_string(n_) +
                            " qubits exceeds dense cap of " + std::to_string(max_qubits));
  }
  using cd = std::complex<double>;
  static const cd kI(0, 1);
  Eigen::Matrix2cd lut[4];
  lut[0] << 1, 0, 0, 1;                  // I
  lut[1] << 0, 1, 1, 0;                  // X
  lut[2] << 0, -kI, kI, cd(0, 0);        // Y
  lut[3] << 1, 0, 0, -1;                 // Z
  auto idx = [](char c) { return c == 'I' ? 0 : c == 'X' ? 1 : c == 'Y' ? 2 : 3; };

  // Qubit 0 is the leftmost factor, so it owns the high bits: M <- kron(M, f).
  Eigen::MatrixXcd m = lut[idx(letter(0))];
  for (uint32_t q = 1; q < n_; ++q) {
    const Eigen::Matrix2cd& f = lut[idx(letter(q))];
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        next.block<2, 2>(2 * r, 2 * c) = m(r, c) * f;
      }
    }
    m.swap(next);
  }
  static const cd phases[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
  return phases[phase_] * m;
}

std::ostream& operator<<(std::ostream& os, const PauliString& p) {
  return os << p.str();
}

}  // namespace pcs

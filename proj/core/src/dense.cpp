#include "pcslab/dense.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace pcs {

namespace {

uint64_t dim_of(uint32_t n) { return uint64_t(1) << n; }

void check_dense_width(uint32_t n, uint32_t cap, const char* what) {
  if (n == 0 || n > cap) {
    throw std::length_error(std::string(what) + ": qubit count " + std::to_string(n) +
                            " outside [1, " + std::to_string(cap) + "]");
  }
}

void check_targets(const std::vector<uint32_t>& targets, uint32_t n) {
  if (targets.empty()) throw std::invalid_argument("empty target list");
  for (size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= n) throw std::out_of_range("target qubit out of range");
    for (size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) throw std::invalid_argument("duplicate target qubit");
    }
  }
}

}  // namespace

DensityMatrix DensityMatrix::zero_state(uint32_t n) {
  check_dense_width(n, kMaxDenseQubits, "DensityMatrix");
  DensityMatrix rho;
  rho.n = n;
  rho.data = Mat::Zero(dim_of(n), dim_of(n));
  rho.data(0, 0) = 1.0;
  return rho;
}

DensityMatrix DensityMatrix::from_pure(uint32_t n, const Vec& psi) {
  check_dense_width(n, kMaxDenseQubits, "DensityMatrix");
  if (psi.size() != Eigen::Index(dim_of(n))) {
    throw std::invalid_argument("statevector dimension mismatch");
  }
  DensityMatrix rho;
  rho.n = n;
  rho.data = psi * psi.adjoint();
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(uint32_t n) {
  check_dense_width(n, kMaxDenseQubits, "DensityMatrix");
  DensityMatrix rho;
  rho.n = n;
  rho.data = Mat::Identity(dim_of(n), dim_of(n)) / double(dim_of(n));
  return rho;
}

void DensityMatrix::validate(bool normalized) const {
  if ((data - data.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
    throw std::domain_error("density matrix is not Hermitian");
  }
  if (normalized && std::abs(data.trace().real() - 1.0) > 1e-9) {
    throw std::domain_error("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(data, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::domain_error("density matrix is not positive semidefinite");
  }
}

double KrausChannel::completeness_scale() const {
  if (operators.empty()) throw std::invalid_argument("empty Kraus set");
  uint64_t d = dim_of(n_targets);
  Mat sum = Mat::Zero(d, d);
  for (const auto& k : operators) {
    if (k.rows() != Eigen::Index(d) || k.cols() != Eigen::Index(d)) {
      throw std::invalid_argument("Kraus operator dimension mismatch");
    }
    sum += k.adjoint() * k;
  }
  double scale = sum.trace().real() / double(d);
  if ((sum - scale * Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::domain_error("Kraus completeness sum is not proportional to identity");
  }
  return scale;
}

void KrausChannel::validate_complete(double tol) const {
  uint64_t d = dim_of(n_targets);
  Mat sum = Mat::Zero(d, d);
  for (const auto& k : operators) sum += k.adjoint() * k;
  if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > std::max(tol, 1e-12)) {
    throw std::domain_error("Kraus set is not complete");
  }
}

Mat KrausChannel::choi() const {
  // Choi convention: C[(i,k),(j,l)] = <k| M(|i><j|) |l>, i.e. the input index
  // is the leading (column-major over blocks) factor: C = sum_ij E_ij (x) M(E_ij).
  // The identity channel therefore gives C[(i,i),(j,j)] = 1.
  uint64_t d = dim_of(n_targets);
  Mat c = Mat::Zero(d * d, d * d);
  for (const auto& k : operators) {
    for (uint64_t i = 0; i < d; ++i) {
      for (uint64_t j = 0; j < d; ++j) {
        // M(|i><j|) = K |i><j| K^dag contributes K.col(i) * K.col(j)^dag.
        for (uint64_t r = 0; r < d; ++r) {
          for (uint64_t s = 0; s < d; ++s) {
            c(i * d + r, j * d + s) += k(r, i) * std::conj(k(s, j));
          }
        }
      }
    }
  }
  return c;
}

Mat embed(const Mat& op, const std::vector<uint32_t>& targets, uint32_t n) {
  check_dense_width(n, kMaxStatevecQubits, "embed");
  check_targets(targets, n);
  uint32_t k = static_cast<uint32_t>(targets.size());
  uint64_t dk = dim_of(k);
  if (op.rows() != Eigen::Index(dk) || op.cols() != Eigen::Index(dk)) {
    throw std::invalid_argument("operator dimension does not match target count");
  }
  uint64_t d = dim_of(n);
  // Bit position of qubit q in the basis index (qubit 0 = MSB).
  auto bitpos = [n](uint32_t q) { return n - 1 - q; };

  Mat full = Mat::Zero(d, d);
  uint64_t rest_mask = d - 1;
  for (uint32_t q : targets) rest_mask &= ~(uint64_t(1) << bitpos(q));

  // Enumerate the non-target bits, then fill each 2^k x 2^k block.
  std::vector<uint64_t> rest_bits;
  for (uint64_t b = 0; b < d; ++b) {
    if ((b & rest_mask) == b) rest_bits.push_back(b);
  }
  for (uint64_t rest : rest_bits) {
    for (uint64_t a = 0; a < dk; ++a) {
      for (uint64_t b = 0; b < dk; ++b) {
        if (op(a, b) == Cplx(0, 0)) continue;
        uint64_t row = rest, col = rest;
        for (uint32_t t = 0; t < k; ++t) {
          // Target t owns bit (k-1-t) of the small index.
          uint64_t abit = (a >> (k - 1 - t)) & 1u;
          uint64_t bbit = (b >> (k - 1 - t)) & 1u;
          row |= abit << bitpos(targets[t]);
          col |= bbit << bitpos(targets[t]);
        }
        full(row, col) = op(a, b);
      }
    }
  }
  return full;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Mat& u,
                            const std::vector<uint32_t>& targets) {
  uint64_t d = u.rows();
  if ((u * u.adjoint() - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::domain_error("operator is not unitary");
  }
  Mat full = embed(u, targets, rho.n);
  DensityMatrix out;
  out.n = rho.n;
  out.data = full * rho.data * full.adjoint();
  return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch,
                            const std::vector<uint32_t>& targets) {
  if (targets.size() != ch.n_targets) {
    throw std::invalid_argument("channel target count mismatch");
  }
  ch.validate_complete();
  DensityMatrix out;
  out.n = rho.n;
  out.data = Mat::Zero(rho.data.rows(), rho.data.cols());
  for (const auto& k : ch.operators) {
    Mat full = embed(k, targets, rho.n);
    out.data += full * rho.data * full.adjoint();
  }
  return out;
}

PostselectResult postselect(const DensityMatrix& rho, const Mat& proj,
                            const std::vector<uint32_t>& targets) {
  if ((proj - proj.adjoint()).cwiseAbs().maxCoeff() > kHermTol ||
      (proj * proj - proj).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::domain_error("projector is not an idempotent Hermitian");
  }
  Mat full = embed(proj, targets, rho.n);
  Mat projected = full * rho.data * full.adjoint();
  PostselectResult res;
  res.prob = projected.trace().real();
  if (res.prob > kBranchTol) {
    DensityMatrix state;
    state.n = rho.n;
    state.data = projected / res.prob;
    res.state = std::move(state);
  }
  return res;
}

namespace {
Mat matrix_sqrt_psd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kPsdTol) throw std::domain_error("matrix is not PSD within tolerance");
    if (ev(i) < 0) ev(i) = 0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.n != rho2.n) throw std::invalid_argument("fidelity dimension mismatch");
  Mat s1 = matrix_sqrt_psd(rho1.data);
  Mat inner = s1 * rho2.data * s1;
  Eigen::SelfAdjointEigenSolver<Mat> es(inner, Eigen::EigenvaluesOnly);
  double sum = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()(i);
    if (ev < -kPsdTol) throw std::domain_error("fidelity inner matrix not PSD");
    if (ev > 0) sum += std::sqrt(ev);
  }
  return sum * sum;
}

double bell_fidelity(const DensityMatrix& rho, uint32_t q0, uint32_t q1) {
  DensityMatrix two = partial_trace(rho, {q0, q1});
  Vec phi = bell_phi_plus();
  double via_projector = (phi.adjoint() * two.data * phi).value().real();

  // Observable route: F = (1 + <XX> - <YY> + <ZZ>) / 4.
  auto expect = [&](char a, char b) {
    Mat o = Eigen::kroneckerProduct(pauli_matrix(a), pauli_matrix(b)).eval();
    return (two.data * o).trace().real();
  };
  double via_obs = 0.25 * (1.0 + expect('X', 'X') - expect('Y', 'Y') + expect('Z', 'Z'));
  if (std::abs(via_projector - via_obs) > 1e-12) {
    throw std::logic_error("bell_fidelity: projector and observable routes disagree");
  }
  return via_projector;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<uint32_t>& keep) {
  check_targets(keep, rho.n);
  uint32_t k = static_cast<uint32_t>(keep.size());
  uint64_t dk = dim_of(k);
  uint64_t d = dim_of(rho.n);
  auto bitpos = [&](uint32_t q) { return rho.n - 1 - q; };

  uint64_t rest_mask = d - 1;
  for (uint32_t q : keep) rest_mask &= ~(uint64_t(1) << bitpos(q));

  DensityMatrix out;
  out.n = k;
  out.data = Mat::Zero(dk, dk);
  for (uint64_t a = 0; a < dk; ++a) {
    for (uint64_t b = 0; b < dk; ++b) {
      uint64_t row0 = 0, col0 = 0;
      for (uint32_t t = 0; t < k; ++t) {
        row0 |= ((a >> (k - 1 - t)) & 1u) << bitpos(keep[t]);
        col0 |= ((b >> (k - 1 - t)) & 1u) << bitpos(keep[t]);
      }
      Cplx sum = 0;
      for (uint64_t rest = 0;; rest = ((rest | ~rest_mask) + 1) & rest_mask) {
        sum += rho.data(row0 | rest, col0 | rest);
        if (rest == rest_mask) break;
      }
      out.data(a, b) = sum;
    }
  }
  return out;
}

void dump_matrix(std::ostream& os, const Mat& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      os << "(" << m(r, c).real() << "," << m(r, c).imag() << ") ";
    }
    os << "\n";
  }
}

Vec apply_unitary_vec(const Vec& psi, const Mat& u,
                      const std::vector<uint32_t>& targets, uint32_t n) {
  return embed(u, targets, n) * psi;
}

std::pair<double, Vec> project_vec(const Vec& psi, const Mat& proj,
                                   const std::vector<uint32_t>& targets, uint32_t n) {
  Vec projected = embed(proj, targets, n) * psi;
  double prob = projected.squaredNorm();
  if (prob > kBranchTol) projected /= std::sqrt(prob);
  return {prob, projected};
}

double overlap2(const Vec& a, const Vec& b) {
  Cplx ip = (a.adjoint() * b).value();
  return std::norm(ip);
}

Mat pauli_matrix(char letter) {
  Mat m(2, 2);
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Cplx(0, -1), Cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
  return m;
}

Mat hadamard() {
  Mat m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Mat s_gate() {
  Mat m(2, 2);
  m << 1, 0, 0, Cplx(0, 1);
  return m;
}

Mat cnot() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Mat cz_gate() {
  Mat m = Mat::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

Vec bell_phi_plus() {
  Vec v = Vec::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace pcs

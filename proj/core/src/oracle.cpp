#include "pcslab/oracle.hpp"

#include <limits>
#include <map>
#include <stdexcept>

namespace pcs {

namespace {

Mat gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::H: return hadamard();
    case GateKind::S: return s_gate();
    case GateKind::X: return pauli_matrix('X');
    case GateKind::Y: return pauli_matrix('Y');
    case GateKind::Z: return pauli_matrix('Z');
    case GateKind::CX: return cnot();
    case GateKind::CZ: return cz_gate();
  }
  throw std::logic_error("unreachable gate kind");
}

std::vector<uint32_t> gate_targets(const Gate& g) {
  if (is_two_qubit(g.kind)) return {g.q0, g.q1};
  return {g.q0};
}

Mat pauli_channel_kraus_apply(const Mat& m, const NoiseSite& s, uint32_t n) {
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  Mat out = Mat::Zero(m.rows(), m.cols());
  for (int i = 0; i < 4; ++i) {
    if (s.probs[i] == 0) continue;
    Mat k = embed(pauli_matrix(letters[i]), {s.qubit}, n);
    out += s.probs[i] * (k * m * k.adjoint());
  }
  return out;
}

struct BranchPlan {
  std::vector<const MeasureZ*> measurements;
  std::vector<const ParityCondition*> conditions;
  std::vector<const FrameRule*> frames;
  std::map<std::string, size_t> bit_index;
};

BranchPlan plan_of(const Circuit& c) {
  BranchPlan plan;
  for (const auto& op : c.ops) {
    if (const auto* m = std::get_if<MeasureZ>(&op)) {
      plan.bit_index[m->label] = plan.measurements.size();
      plan.measurements.push_back(m);
    } else if (const auto* p = std::get_if<ParityCondition>(&op)) {
      plan.conditions.push_back(p);
    } else if (const auto* f = std::get_if<FrameRule>(&op)) {
      plan.frames.push_back(f);
    }
  }
  return plan;
}

bool assignment_passes(const BranchPlan& plan, uint64_t bits) {
  for (const auto* p : plan.conditions) {
    int parity = 0;
    for (const auto& l : p->labels) parity ^= int(bits >> plan.bit_index.at(l)) & 1;
    if (parity != (p->required & 1)) return false;
  }
  return true;
}

// Runs one measurement-assignment branch: a linear (completely positive) pass
// over `seed`, projecting each measured qubit onto its assigned bit.
Mat run_branch(const Circuit& c, const BranchPlan& plan, const Mat& seed, uint64_t bits) {
  Mat m = seed;
  uint32_t n = c.n_qubits;
  size_t bit = 0;
  for (const auto& op : c.ops) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      Mat u = embed(gate_matrix(*g), gate_targets(*g), n);
      m = u * m * u.adjoint();
    } else if (const auto* s = std::get_if<NoiseSite>(&op)) {
      m = pauli_channel_kraus_apply(m, *s, n);
    } else if (const auto* mz = std::get_if<MeasureZ>(&op)) {
      int b = int(bits >> bit) & 1;
      Mat proj = Mat::Zero(2, 2);
      proj(b, b) = 1.0;
      Mat p = embed(proj, {mz->qubit}, n);
      m = p * m * p.adjoint();
      ++bit;
    }
  }
  // Classical frame corrections, conditioned on this branch's bits.
  for (const auto* f : plan.frames) {
    if ((bits >> plan.bit_index.at(f->label)) & 1) {
      Mat u = embed(pauli_matrix(f->letter), {f->qubit}, n);
      m = u * m * u.adjoint();
    }
  }
  return m;
}

}  // namespace

OracleResult oracle_run(const Circuit& c) {
  c.validate();
  if (c.n_qubits > kMaxDenseQubits) {
    throw std::length_error("oracle_run: circuit exceeds the dense-oracle qubit cap of " +
                            std::to_string(kMaxDenseQubits));
  }
  BranchPlan plan = plan_of(c);
  size_t nm = plan.measurements.size();
  if (nm > 20) throw std::length_error("oracle_run: too many measurements to enumerate");

  DensityMatrix init = DensityMatrix::zero_state(c.n_qubits);
  Mat acc = Mat::Zero(init.data.rows(), init.data.cols());
  for (uint64_t bits = 0; bits < (uint64_t(1) << nm); ++bits) {
    if (!assignment_passes(plan, bits)) continue;
    acc += run_branch(c, plan, init.data, bits);
  }

  OracleResult res;
  res.pass_prob = acc.trace().real();
  if (c.data_qubits && res.pass_prob > kBranchTol) {
    DensityMatrix rho;
    rho.n = c.n_qubits;
    rho.data = acc / res.pass_prob;
    res.fidelity = bell_fidelity(rho, c.data_qubits->first, c.data_qubits->second);
  } else {
    res.fidelity = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

ExtractedChannel extract_channel(const Circuit& c,
                                 const std::vector<uint32_t>& data_qubits) {
  c.validate();
  if (data_qubits.empty() || data_qubits.size() > 3) {
    throw std::invalid_argument("extract_channel supports 1..3 data qubits");
  }
  if (c.n_qubits > kMaxDenseQubits) {
    throw std::length_error("extract_channel: circuit exceeds the dense-oracle qubit cap");
  }
  BranchPlan plan = plan_of(c);
  size_t nm = plan.measurements.size();
  if (nm > 20) throw std::length_error("extract_channel: too many measurements");

  uint32_t k = static_cast<uint32_t>(data_qubits.size());
  uint64_t dk = uint64_t(1) << k;
  uint64_t dn = uint64_t(1) << c.n_qubits;

  ExtractedChannel out;
  out.choi = Mat::Zero(dk * dk, dk * dk);

  for (uint64_t i = 0; i < dk; ++i) {
    for (uint64_t j = 0; j < dk; ++j) {
      // Non-data qubits start in |0>; the data factor carries the basis seed
      // E_ij.  embed() places E_ij with identity elsewhere, so zero out every
      // entry whose non-data bits are not all zero.
      Mat e = Mat::Zero(dk, dk);
      e(i, j) = 1.0;
      Mat full_seed = embed(e, data_qubits, c.n_qubits);
      uint64_t nondata_mask = dn - 1;
      for (uint32_t q : data_qubits) nondata_mask &= ~(uint64_t(1) << (c.n_qubits - 1 - q));
      for (uint64_t r = 0; r < dn; ++r) {
        for (uint64_t s = 0; s < dn; ++s) {
          if ((r & nondata_mask) || (s & nondata_mask)) full_seed(r, s) = 0;
        }
      }

      Mat acc = Mat::Zero(dn, dn);
      for (uint64_t bits = 0; bits < (uint64_t(1) << nm); ++bits) {
        if (!assignment_passes(plan, bits)) continue;
        acc += run_branch(c, plan, full_seed, bits);
      }
      Mat reduced = partial_trace_mat(acc, c.n_qubits, data_qubits);
      for (uint64_t r = 0; r < dk; ++r) {
        for (uint64_t s = 0; s < dk; ++s) {
          out.choi(i * dk + r, j * dk + s) = reduced(r, s);
        }
      }
    }
  }

  // Kraus operators from the Choi eigendecomposition.
  Eigen::SelfAdjointEigenSolver<Mat> es(out.choi);
  out.kraus.n_targets = k;
  for (Eigen::Index a = es.eigenvalues().size() - 1; a >= 0; --a) {
    double ev = es.eigenvalues()(a);
    if (ev < -1e-9) throw std::domain_error("extracted Choi matrix is not PSD");
    if (ev <= 1e-12) continue;
    Mat kop(dk, dk);
    for (uint64_t i = 0; i < dk; ++i) {
      for (uint64_t r = 0; r < dk; ++r) {
        kop(r, i) = std::sqrt(ev) * es.eigenvectors()(i * dk + r, a);
      }
    }
    out.kraus.operators.push_back(std::move(kop));
  }
  return out;
}

Mat partial_trace_mat(const Mat& m, uint32_t n, const std::vector<uint32_t>& keep) {
  uint32_t k = static_cast<uint32_t>(keep.size());
  uint64_t dk = uint64_t(1) << k;
  uint64_t d = uint64_t(1) << n;
  auto bitpos = [&](uint32_t q) { return n - 1 - q; };
  uint64_t rest_mask = d - 1;
  for (uint32_t q : keep) rest_mask &= ~(uint64_t(1) << bitpos(q));

  Mat out = Mat::Zero(dk, dk);
  for (uint64_t a = 0; a < dk; ++a) {
    for (uint64_t b = 0; b < dk; ++b) {
      uint64_t row0 = 0, col0 = 0;
      for (uint32_t t = 0; t < k; ++t) {
        row0 |= ((a >> (k - 1 - t)) & 1u) << bitpos(keep[t]);
        col0 |= ((b >> (k - 1 - t)) & 1u) << bitpos(keep[t]);
      }
      Cplx sum = 0;
      for (uint64_t rest = 0;; rest = ((rest | ~rest_mask) + 1) & rest_mask) {
        sum += m(row0 | rest, col0 | rest);
        if (rest == rest_mask) break;
      }
      out(a, b) = sum;
    }
  }
  return out;
}

}  // namespace pcs

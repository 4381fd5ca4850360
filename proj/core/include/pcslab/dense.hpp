#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>
#include <Eigen/Dense>

#include "pcslab/pauli.hpp"

namespace pcs {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Exact density-matrix engine used as ground truth for the fast paths.
/// Subjects are capped at kMaxDenseQubits (256 x 256 matrices); statevector
/// helpers go a little further.  Basis convention: qubit 0 is the most
/// significant bit of the computational index.
constexpr uint32_t kMaxDenseQubits = 8;
constexpr uint32_t kMaxStatevecQubits = 14;

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kBranchTol = 1e-14;

struct DensityMatrix {
  uint32_t n = 0;
  Mat data;

  static DensityMatrix zero_state(uint32_t n);
  static DensityMatrix from_pure(uint32_t n, const Vec& psi);
  static DensityMatrix maximally_mixed(uint32_t n);

  /// Hermiticity/trace/PSD validation; throws std::domain_error on failure.
  /// Post-projection intermediates may set `normalized = false` to skip the
  /// unit-trace check.
  void validate(bool normalized = true) const;
};

struct KrausChannel {
  uint32_t n_targets = 1;
  std::vector<Mat> operators;

  /// sum K^dag K == c * I; returns c (1 for trace preserving channels).
  double completeness_scale() const;
  /// Throws unless completeness_scale() == 1 within tolerance.
  void validate_complete(double tol = kHermTol) const;

  Mat choi() const;
};

/// Embeds a 2^k-dimensional operator acting on `targets` (in the given order)
/// into the full n-qubit space.
Mat embed(const Mat& op, const std::vector<uint32_t>& targets, uint32_t n);

/// U rho U^dag with U acting on the listed targets; validates unitarity.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Mat& u,
                            const std::vector<uint32_t>& targets);

/// sum_i K_i rho K_i^dag on the listed targets; validates completeness.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch,
                            const std::vector<uint32_t>& targets);

struct PostselectResult {
  double prob = 0.0;
  /// Normalized post-measurement state; empty when prob <= kBranchTol.
  std::optional<DensityMatrix> state;
};

/// Projective postselection with projector `proj` on `targets`.
PostselectResult postselect(const DensityMatrix& rho, const Mat& proj,
                            const std::vector<uint32_t>& targets);

/// Uhlmann fidelity tr(sqrt(sqrt(r1) r2 sqrt(r1)))^2 via eigendecomposition.
/// Eigenvalues in [-kPsdTol, 0) are clamped to zero; worse is an error.
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Fidelity with the two-qubit EPR state on (q0, q1); remaining qubits are
/// traced out first.  Computed both as a projector overlap and through the
/// XX/YY/ZZ observable decomposition; the two routes must agree.
double bell_fidelity(const DensityMatrix& rho, uint32_t q0, uint32_t q1);

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<uint32_t>& keep);

/// Plain-text dump of a complex matrix (debugging aid).
void dump_matrix(std::ostream& os, const Mat& m);

// ---- statevector helpers (pure-state oracle work, e.g. graph states) ----

Vec apply_unitary_vec(const Vec& psi, const Mat& u,
                      const std::vector<uint32_t>& targets, uint32_t n);

/// Returns (probability, normalized projected state).
std::pair<double, Vec> project_vec(const Vec& psi, const Mat& proj,
                                   const std::vector<uint32_t>& targets, uint32_t n);

/// |<a|b>|^2 (pure-state fidelity, global phase irrelevant).
double overlap2(const Vec& a, const Vec& b);

// Common 2x2 / 4x4 blocks.
Mat pauli_matrix(char letter);
Mat hadamard();
Mat s_gate();
Mat cnot();
Mat cz_gate();
Vec bell_phi_plus();

}  // namespace pcs

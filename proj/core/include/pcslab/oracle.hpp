#pragma once

#include "pcslab/circuit.hpp"
#include "pcslab/dense.hpp"

namespace pcs {

/// Dense-matrix execution of a circuit: exact pass probability and
/// postselected Bell fidelity.  All qubits start in |0>; measurement-outcome
/// assignments are enumerated and branches violating the parity conditions
/// are discarded.  Subject to the density-matrix qubit cap.
struct OracleResult {
  double pass_prob = 0.0;
  double fidelity = 0.0;
};

OracleResult oracle_run(const Circuit& c);

/// The conditioned (trace-nonincreasing) map induced on `data_qubits` by a
/// circuit whose other qubits start in |0>, with postselection on its parity
/// conditions.  Returned as a Choi matrix plus a Kraus decomposition from the
/// Choi eigenvectors.
struct ExtractedChannel {
  Mat choi;
  KrausChannel kraus;
};

ExtractedChannel extract_channel(const Circuit& c,
                                 const std::vector<uint32_t>& data_qubits);

/// Generic matrix partial trace (no Hermiticity assumed).
Mat partial_trace_mat(const Mat& m, uint32_t n, const std::vector<uint32_t>& keep);

}  // namespace pcs

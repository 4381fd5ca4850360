#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pcslab/circuit.hpp"
#include "pcslab/rng.hpp"
#include "pcslab/tableau.hpp"

namespace pcs {

/// One Monte Carlo execution of a circuit.
struct ShotRecord {
  /// Outcome bits in measurement order (see Circuit::measurement_labels()).
  std::vector<int> bits;
  bool passed = false;
  /// Accumulated classical correction for the designated data pair.
  PauliString frame;
};

ShotRecord run_shot(const Circuit& c, Rng& rng);

/// Monte Carlo Bell-fidelity estimate over postselected shots.  Shots cycle
/// through the XX / YY / ZZ observables; F = (1 + <XX> - <YY> + <ZZ>) / 4.
/// Results are a pure function of (circuit, n_shots, seed): every shot draws
/// an independent stream from the master seed, so worker count cannot change
/// any number.
struct McEstimate {
  uint64_t n_shots = 0;
  uint64_t n_pass = 0;
  double pass_rate = 0.0;
  double pass_stderr = 0.0;
  double fidelity = 0.0;
  double fidelity_stderr = 0.0;
  uint64_t seed = 0;
  std::array<uint64_t, 3> obs_shots{};  // postselected shots per observable
  std::array<int64_t, 3> obs_sum{};     // sum of +/-1 outcomes per observable
};

/// Throws std::runtime_error if no shot passes postselection.
McEstimate estimate_bell_fidelity(const Circuit& c, uint64_t n_shots,
                                  uint64_t seed, unsigned n_threads = 0);

/// Exact pass probability and postselected Bell fidelity by exhaustive
/// enumeration of noise-site Pauli assignments (one Pauli-frame propagation
/// per noise generator, XOR-combined per path).
struct ExactResult {
  double pass_prob = 0.0;
  double fidelity = 0.0;  // NaN when pass_prob == 0 or no data pair
  uint64_t n_paths = 0;
};

ExactResult enumerate_paths(const Circuit& c, uint64_t max_paths = 10'000'000);

/// One noise-path record: the Kraus-branch choice per noise site (I/X/Y/Z as
/// 0..3, in circuit order), its probability, and whether it postselects.
/// Probabilities over all records sum to 1.  Intended for inspection and
/// tests; the default budget is deliberately small.
struct ErrorPath {
  std::vector<uint8_t> assignment;
  double probability = 0.0;
  bool passed = false;
};

std::vector<ErrorPath> enumerate_path_records(const Circuit& c,
                                              uint64_t max_paths = 100'000);

}  // namespace pcs

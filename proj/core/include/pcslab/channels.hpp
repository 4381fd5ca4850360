#pragma once

#include <array>

#include "pcslab/dense.hpp"

namespace pcs {

/// The two single-qubit depolarizing parameterizations used in this library.
///
///   Mixing:     E(rho) = (1 - 3p/4) rho + (p/4)(X rho X + Y rho Y + Z rho Z);
///               the state is fully depolarized at p = 1.
///   PauliError: E(rho) = (1 - p) rho + (p/3)(X rho X + Y rho Y + Z rho Z);
///               p is the probability that some Pauli error fires, and full
///               depolarization happens at p = 3/4.
///
/// Mixing(p) and PauliError(3p/4) are the same channel.  All public APIs in
/// this library default to the Mixing convention.
enum class DepolConvention { Mixing, PauliError };

struct DepolarizingSpec {
  double p = 0.0;
  DepolConvention convention = DepolConvention::Mixing;

  /// {P(I), P(X), P(Y), P(Z)} for the equivalent Pauli channel.
  std::array<double, 4> pauli_probs() const;
  double as_mixing_p() const;
};

/// 4-operator Kraus set realizing the given parameterization; validates p.
KrausChannel depolarizing_kraus(const DepolarizingSpec& spec);

/// The postselected single-sided X-check error map, as a 4-operator Kraus set
/// proportional to {I, X, Y, Z}.  `p_error` is a PauliError-convention rate
/// (the natural parameter for these weights).  The set is trace-decreasing;
/// `norm` is the completeness scale = the postselection rate.
struct EffectiveChannel {
  KrausChannel kraus;          // unnormalized operators
  double norm = 1.0;           // sum K^dag K = norm * I
  std::array<double, 4> weights{};  // squared amplitudes per Pauli component
};

EffectiveChannel effective_pcs_x_channel(double p_error_pauli_convention);

/// Fidelity of an EPR pair after independent Mixing-convention depolarizing
/// of strength p on both qubits: F = 1 + (3/4)(p - 2)p.
double fidelity_from_p(double p_mixing);

/// Inverse of the above; requires F in [0.25, 1].
double p_from_fidelity(double F);

}  // namespace pcs

#pragma once

#include <cstdint>
#include <utility>

namespace pcs {

/// Closed-form performance point of a purification / error-detection scheme.
struct PurificationPoint {
  double f_in = 0.0;
  double f_out = 0.0;
  double rate = 0.0;
  uint32_t qubit_cost = 0;
};

/// One recurrence round on two Werner pairs of fidelity F (valid for F in
/// [0.25, 1]; purifies above F = 1/2).
PurificationPoint bbpssw_step(double F);

/// Iterated rounds; rate is the product of per-round success probabilities
/// and qubit cost doubles per round (2^(rounds+1)).
PurificationPoint bbpssw_recursive(double F, uint32_t rounds);

/// X checks on both halves, independent depolarizing strengths p1 / p2
/// (Mixing convention) on each half's data + ancilla.
PurificationPoint pcs_x_point_p(double p1, double p2);
/// Same scheme parameterized by the input Bell fidelity (p1 = p2).
PurificationPoint pcs_x_point_F(double F);

/// X and Z checks on both halves.
PurificationPoint pcs_xz_point_p(double p1, double p2);
PurificationPoint pcs_xz_point_F(double F);

/// Single-sided X check: postselection rate and output fidelity for one half
/// carrying depolarizing strength p (Mixing convention) on data + ancilla.
PurificationPoint pcs_x_half_point(double p);

/// Input Bell fidelity for independent Mixing-p1/p2 depolarizing on the two
/// halves (reduces to 1 + (3/4)(p-2)p at p1 = p2 = p).
double bell_fidelity_from_half_ps(double p1, double p2);

enum class Scheme { PcsX, PcsXZ, Bbpssw };

/// The maximal interval of input fidelities where F' > F, bracketed by
/// root-finding on F'(F) - F to 1e-9.
std::pair<double, double> crossover_region(Scheme scheme);

}  // namespace pcs

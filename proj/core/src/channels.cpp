#include "pcslab/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace pcs {

namespace {
void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("depolarizing strength must lie in [0, 1]");
  }
}
}  // namespace

std::array<double, 4> DepolarizingSpec::pauli_probs() const {
  check_prob(p);
  if (convention == DepolConvention::Mixing) {
    return {1.0 - 3.0 * p / 4.0, p / 4.0, p / 4.0, p / 4.0};
  }
  return {1.0 - p, p / 3.0, p / 3.0, p / 3.0};
}

double DepolarizingSpec::as_mixing_p() const {
  return convention == DepolConvention::Mixing ? p : 4.0 * p / 3.0;
}

KrausChannel depolarizing_kraus(const DepolarizingSpec& spec) {
  auto probs = spec.pauli_probs();
  KrausChannel ch;
  ch.n_targets = 1;
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (int i = 0; i < 4; ++i) {
    ch.operators.push_back(std::sqrt(probs[i]) * pauli_matrix(letters[i]));
  }
  ch.validate_complete();
  return ch;
}

EffectiveChannel effective_pcs_x_channel(double q) {
  check_prob(q);
  EffectiveChannel out;
  out.weights = {
      (1.0 - q) * (1.0 - q) + q * q / 9.0,  // I
      (1.0 - q) * 2.0 * q / 3.0,            // X
      2.0 * q * q / 9.0,                    // Y
      2.0 * q * q / 9.0,                    // Z
  };
  out.kraus.n_targets = 1;
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (int i = 0; i < 4; ++i) {
    out.kraus.operators.push_back(std::sqrt(out.weights[i]) * pauli_matrix(letters[i]));
  }
  out.norm = out.kraus.completeness_scale();
  return out;
}

double fidelity_from_p(double p) {
  check_prob(p);
  return 1.0 + 0.75 * (p - 2.0) * p;
}

double p_from_fidelity(double F) {
  if (!(F >= 0.25 && F <= 1.0)) {
    throw std::domain_error("fidelity must lie in [0.25, 1] to invert");
  }
  return (3.0 - std::sqrt(3.0) * std::sqrt(4.0 * F - 1.0)) / 3.0;
}

}  // namespace pcs

#include "pcslab/analytic.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "pcslab/channels.hpp"

namespace pcs {

namespace {
void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
  }
}

void check_fidelity_domain(double F) {
  if (!(F >= 0.25 && F <= 1.0)) {
    throw std::domain_error("input fidelity must lie in [0.25, 1]");
  }
}
}  // namespace

PurificationPoint bbpssw_step(double F) {
  check_fidelity_domain(F);
  double q = (1.0 - F) / 3.0;
  double rate = F * F + 2.0 * F * q + 5.0 * q * q;
  PurificationPoint pt;
  pt.f_in = F;
  pt.rate = rate;
  pt.f_out = (F * F + q * q) / rate;
  pt.qubit_cost = 4;
  return pt;
}

PurificationPoint bbpssw_recursive(double F, uint32_t rounds) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  PurificationPoint pt;
  pt.f_in = F;
  pt.rate = 1.0;
  double f = F;
  for (uint32_t i = 0; i < rounds; ++i) {
    PurificationPoint step = bbpssw_step(f);
    pt.rate *= step.rate;
    f = step.f_out;
  }
  pt.f_out = f;
  pt.qubit_cost = uint32_t(1) << (rounds + 1);
  return pt;
}

double bell_fidelity_from_half_ps(double p1, double p2) {
  // Matching-Pauli overlap of the two halves' depolarizing channels against
  // the EPR projector: sum_P q_P(p1) q_P(p2).
  auto qa = DepolarizingSpec{p1, DepolConvention::Mixing}.pauli_probs();
  auto qb = DepolarizingSpec{p2, DepolConvention::Mixing}.pauli_probs();
  return qa[0] * qb[0] + qa[1] * qb[1] + qa[2] * qb[2] + qa[3] * qb[3];
}

PurificationPoint pcs_x_point_p(double p1, double p2) {
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  double c = 0.25 * ((p1 - 2.0) * p1 + 2.0) * ((p2 - 2.0) * p2 + 2.0);
  double num = (9.0 * (p1 - 2.0) * p1 + 10.0) * p2 * p2 +
               2.0 * (20.0 - 9.0 * p1) * p1 * p2 + 2.0 * p1 * (5.0 * p1 - 12.0) -
               24.0 * p2 + 16.0;
  double den = 4.0 * ((p1 - 2.0) * p1 + 2.0) * ((p2 - 2.0) * p2 + 2.0);
  PurificationPoint pt;
  pt.f_in = bell_fidelity_from_half_ps(p1, p2);
  pt.rate = c;
  pt.f_out = num / den;
  pt.qubit_cost = 4;
  return pt;
}

PurificationPoint pcs_x_point_F(double F) {
  check_fidelity_domain(F);
  PurificationPoint pt;
  pt.f_in = F;
  pt.rate = (1.0 + 2.0 * F) * (1.0 + 2.0 * F) / 9.0;
  pt.f_out = 9.0 * F * F / ((1.0 + 2.0 * F) * (1.0 + 2.0 * F));
  pt.qubit_cost = 4;
  return pt;
}

PurificationPoint pcs_xz_point_p(double p1, double p2) {
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  double g1 = p1 * (2.0 * p1 - 3.0) + 2.0;
  double g2 = p2 * (2.0 * p2 - 3.0) + 2.0;
  double c = (1.0 / 16.0) * (p1 - 2.0) * g1 * (p2 - 2.0) * g2;
  double num = (p1 * (13.0 * p1 - 25.0) + 14.0) * p2 * p2 -
               25.0 * (p1 - 2.0) * p1 * p2 + 14.0 * (p1 - 2.0) * p1 - 28.0 * p2 + 16.0;
  double den = 4.0 * g1 * g2;
  PurificationPoint pt;
  pt.f_in = bell_fidelity_from_half_ps(p1, p2);
  pt.rate = c;
  pt.f_out = num / den;
  pt.qubit_cost = 6;
  return pt;
}

PurificationPoint pcs_xz_point_F(double F) {
  check_fidelity_domain(F);
  double s = std::sqrt(12.0 * F - 3.0);
  PurificationPoint pt;
  pt.f_in = F;
  double b = 3.0 + 6.0 * F - s + 4.0 * F * s;
  pt.rate = b * b / 324.0;
  double num = 1.0 + 52.0 * F * F - s - 2.0 * F * (4.0 + s);
  double den = (s - 1.0 - 8.0 * F) * (s - 1.0 - 8.0 * F);
  pt.f_out = num / den;
  pt.qubit_cost = 6;
  return pt;
}

PurificationPoint pcs_x_half_point(double p) {
  check_prob(p, "p");
  PurificationPoint pt;
  pt.f_in = fidelity_from_p(p);
  pt.rate = 0.5 * (2.0 + p * (-2.0 + p));
  pt.f_out = (8.0 + p * (-12.0 + 5.0 * p)) / (8.0 + 4.0 * p * (-2.0 + p));
  pt.qubit_cost = 2;
  return pt;
}

std::pair<double, double> crossover_region(Scheme scheme) {
  std::function<double(double)> fprime;
  double lo_domain = 0.25, hi_domain = 1.0;
  switch (scheme) {
    case Scheme::PcsX:
      fprime = [](double F) { return pcs_x_point_F(F).f_out; };
      break;
    case Scheme::PcsXZ:
      fprime = [](double F) { return pcs_xz_point_F(F).f_out; };
      break;
    case Scheme::Bbpssw:
      fprime = [](double F) { return bbpssw_step(F).f_out; };
      break;
  }
  auto g = [&](double F) { return fprime(F) - F; };

  // Scan for the gain region, then pin its edges by bisection (roots sitting
  // exactly on the domain boundary are accepted as-is).
  const int steps = 4096;
  const double tol = 1e-9;
  double lo = NAN, hi = NAN;
  double prev_f = lo_domain, prev_g = g(lo_domain);
  for (int i = 1; i <= steps; ++i) {
    double f = lo_domain + (hi_domain - lo_domain) * i / steps;
    double cur = g(f);
    if (std::isnan(lo) && cur > tol) {
      if (prev_g > tol) {
        lo = prev_f;
      } else if (std::abs(prev_g) <= tol) {
        lo = prev_f;
      } else {
        double a = prev_f, b = f;
        while (b - a > tol) {
          double m = 0.5 * (a + b);
          (g(m) > 0 ? b : a) = m;
        }
        lo = 0.5 * (a + b);
      }
    }
    if (!std::isnan(lo) && std::isnan(hi) && cur < -tol) {
      double a = prev_f, b = f;
      while (b - a > tol) {
        double m = 0.5 * (a + b);
        (g(m) > 0 ? a : b) = m;
      }
      hi = 0.5 * (a + b);
    }
    prev_f = f;
    prev_g = cur;
  }
  if (std::isnan(lo)) throw std::runtime_error("no gain region found");
  if (std::isnan(hi)) hi = hi_domain;  // gain extends to the F = 1 fixed point
  return {lo, hi};
}

}  // namespace pcs

#include <doctest.h>

#include <map>

#include "pcslab/dense.hpp"
#include "pcslab/tableau.hpp"
#include "test_util.hpp"

using namespace pcs;

namespace {

struct RandomCircuit {
  std::vector<Gate> gates;
};

RandomCircuit random_clifford(uint32_t n, uint32_t len, Rng& rng) {
  RandomCircuit rc;
  const GateKind kinds[] = {GateKind::H, GateKind::S, GateKind::X, GateKind::Y,
                            GateKind::Z, GateKind::CX, GateKind::CZ};
  for (uint32_t i = 0; i < len; ++i) {
    GateKind k = kinds[rng.next_u64() % 7];
    uint32_t q0 = rng.next_u64() % n;
    uint32_t q1 = (q0 + 1 + rng.next_u64() % (n - 1)) % n;
    rc.gates.push_back(Gate{k, q0, q1});
  }
  return rc;
}

Vec dense_run(const RandomCircuit& rc, uint32_t n) {
  Vec psi = Vec::Zero(uint64_t(1) << n);
  psi(0) = 1.0;
  for (const auto& g : rc.gates) {
    Mat u;
    std::vector<uint32_t> t;
    switch (g.kind) {
      case GateKind::H: u = hadamard(); t = {g.q0}; break;
      case GateKind::S: u = s_gate(); t = {g.q0}; break;
      case GateKind::X: u = pauli_matrix('X'); t = {g.q0}; break;
      case GateKind::Y: u = pauli_matrix('Y'); t = {g.q0}; break;
      case GateKind::Z: u = pauli_matrix('Z'); t = {g.q0}; break;
      case GateKind::CX: u = cnot(); t = {g.q0, g.q1}; break;
      case GateKind::CZ: u = cz_gate(); t = {g.q0, g.q1}; break;
    }
    psi = apply_unitary_vec(psi, u, t, n);
  }
  return psi;
}

}  // namespace

TEST_CASE("tableau: Bell pair stabilizers") {
  StabilizerTableau t(2);
  t.apply_gate(GateKind::H, 0);
  t.apply_gate(GateKind::CX, 0, 1);
  CHECK(t.expectation(PauliString::from_string("XX")) == 1);
  CHECK(t.expectation(PauliString::from_string("ZZ")) == 1);
  CHECK(t.expectation(PauliString::from_string("-YY")) == 1);
  CHECK(t.expectation(PauliString::from_string("XI")) == 0);
}

TEST_CASE("tableau: CZ leaves Z rows alone") {
  StabilizerTableau t(2);  // |00>, stabilizers +ZI, +IZ
  t.apply_gate(GateKind::CZ, 0, 1);
  CHECK(t.expectation(PauliString::from_string("ZI")) == 1);
  CHECK(t.expectation(PauliString::from_string("IZ")) == 1);
}

TEST_CASE("tableau: conjugation agrees with the dense oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    uint32_t n = 4;
    RandomCircuit rc = random_clifford(n, 24, rng);
    StabilizerTableau t(n);
    for (const auto& g : rc.gates) t.apply(g);
    Vec psi = dense_run(rc, n);
    // Every stabilizer row must fix the dense state.
    for (uint32_t i = 0; i < n; ++i) {
      PauliString row = t.stabilizer_row(i);
      Vec mapped = row.to_matrix() * psi;
      CHECK(overlap2(mapped, psi) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("tableau: measurement basics") {
  Rng rng(5);
  StabilizerTableau t(1);
  auto [m, det] = t.measure_z_flagged(0, rng);
  CHECK(m == 0);
  CHECK(det);

  // Bell pair: first half random, second correlated.
  for (int trial = 0; trial < 32; ++trial) {
    StabilizerTableau b(2);
    b.apply_gate(GateKind::H, 0);
    b.apply_gate(GateKind::CX, 0, 1);
    auto [m0, det0] = b.measure_z_flagged(0, rng);
    auto [m1, det1] = b.measure_z_flagged(1, rng);
    CHECK_FALSE(det0);
    CHECK(det1);
    CHECK(m0 == m1);
  }
}

TEST_CASE("tableau: measurement distribution matches the dense oracle") {
  Rng rng(777);
  for (int round = 0; round < 4; ++round) {
    uint32_t n = 3;
    RandomCircuit rc = random_clifford(n, 16, rng);
    Vec psi = dense_run(rc, n);

    const int shots = 10000;
    std::map<uint32_t, int> counts;
    for (int s = 0; s < shots; ++s) {
      StabilizerTableau t(n);
      for (const auto& g : rc.gates) t.apply(g);
      uint32_t key = 0;
      for (uint32_t q = 0; q < n; ++q) key = (key << 1) | t.measure_z(q, rng);
      counts[key]++;
    }
    // chi^2 against the dense probabilities over the 8 outcomes.
    double chi2 = 0;
    int dof = 0;
    for (uint32_t key = 0; key < 8; ++key) {
      double p = std::norm(psi(key));
      double expected = p * shots;
      double observed = counts.count(key) ? counts[key] : 0;
      if (expected < 1e-9) {
        CHECK(observed == 0);
        continue;
      }
      chi2 += (observed - expected) * (observed - expected) / expected;
      ++dof;
    }
    // Generous gate: P(chi2 > 35) is negligible for dof <= 8.
    CHECK(chi2 < 35.0);
    (void)dof;
  }
}

TEST_CASE("tableau: symplectic invariants hold through random circuits") {
  Rng rng(31);
  for (int trial = 0; trial < 10000; ++trial) {
    uint32_t n = 2 + rng.next_u64() % 5;
    RandomCircuit rc = random_clifford(n, 12, rng);
    StabilizerTableau t(n);
    for (const auto& g : rc.gates) {
      t.apply(g);
      t.check_invariants();
    }
  }
}

TEST_CASE("tableau: errors") {
  StabilizerTableau t(2);
  CHECK_THROWS_AS(t.apply_gate(GateKind::H, 7), std::out_of_range);
  CHECK_THROWS_AS(t.apply_gate(GateKind::CX, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(StabilizerTableau(0), std::invalid_argument);
  CHECK_THROWS_AS(StabilizerTableau(65), std::invalid_argument);
}

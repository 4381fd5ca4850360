#include <doctest.h>

#include <cmath>

#include "pcslab/graph_state.hpp"
#include "test_util.hpp"

using namespace pcs;
using pcs::testutil::random_graph;

TEST_CASE("graph: local clifford algebra") {
  LocalClifford h = LocalClifford::h();
  CHECK(h.conjugate('X', 1) == std::pair<char, int>{'Z', 1});
  CHECK(h.conjugate('Z', 1) == std::pair<char, int>{'X', 1});
  CHECK(h.conjugate('Y', 1) == std::pair<char, int>{'Y', -1});

  LocalClifford s = LocalClifford::s();
  CHECK(s.conjugate('X', 1) == std::pair<char, int>{'Y', 1});
  CHECK(s.after(s) == LocalClifford::z());
  CHECK(s.after(LocalClifford::s_dag()).is_identity());

  // Matrix realizations respect conjugation for all 24 elements reachable by
  // short words.
  Rng rng(3);
  LocalClifford c = LocalClifford::identity();
  for (int step = 0; step < 30; ++step) {
    c = (rng.next_bit() ? LocalClifford::h() : LocalClifford::s()).after(c);
    Eigen::Matrix2cd m = c.matrix();
    for (char letter : {'X', 'Y', 'Z'}) {
      auto [img, sign] = c.conjugate(letter, 1);
      Mat lhs = m * pauli_matrix(letter) * m.adjoint();
      Mat rhs = double(sign) * pauli_matrix(img);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("graph: local complementation") {
  // Isolated vertex: nothing changes.
  GraphState lone = GraphState::from_edges(2, {});
  GraphState lc = local_complement(lone, 0);
  CHECK_FALSE(lc.has_edge(0, 1));
  CHECK(overlap2(lone.to_state(), lc.to_state()) == doctest::Approx(1.0).epsilon(1e-12));

  // Triangle complemented at any vertex drops the opposite edge.
  GraphState tri = GraphState::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  GraphState t0 = local_complement(tri, 0);
  CHECK(t0.has_edge(0, 1));
  CHECK(t0.has_edge(0, 2));
  CHECK_FALSE(t0.has_edge(1, 2));

  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + int(rng.next_u64() % 5);
    GraphState g = random_graph(n, 0.5, rng);
    int a = int(rng.next_u64() % n);
    GraphState once = local_complement(g, a);
    CHECK(overlap2(g.to_state(), once.to_state()) == doctest::Approx(1.0).epsilon(1e-10));
    // Involution on the graph part.
    GraphState twice = local_complement(once, a);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) CHECK(twice.has_edge(u, v) == g.has_edge(u, v));
    }
    CHECK(overlap2(g.to_state(), twice.to_state()) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("graph: measurement rule structure") {
  // Isolated vertex: X measurement only removes it.
  GraphState lone = GraphState::from_edges(2, {});
  GraphState after = measure_x(lone, 0, std::nullopt, 0);
  CHECK(after.num_vertices() == 1);
  CHECK_THROWS_AS(measure_x(lone, 0, std::nullopt, 1), std::domain_error);

  // Two-vertex path measured at one end leaves the partner in a +/- frame.
  GraphState path = GraphState::from_edges(2, {{0, 1}});
  for (int outcome : {0, 1}) {
    RuleCheck chk = check_measurement_rule(path, 'X', 0, 1, outcome);
    CHECK(chk.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(chk.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  }

  // Z outcome 1 on a star center puts Z frames on all leaves.
  GraphState star = GraphState::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  GraphState cut = measure_z(star, 0, 1);
  for (int leaf : {1, 2, 3}) CHECK(cut.frame_of(leaf) == LocalClifford::z());
  GraphState cut0 = measure_z(star, 0, 0);
  for (int leaf : {1, 2, 3}) CHECK(cut0.frame_of(leaf).is_identity());

  // Y on a triangle center complements the remainder.
  GraphState tri = GraphState::from_edges(3, {{0, 1}, {0, 2}});
  GraphState y = measure_y(tri, 0, 0);
  CHECK(y.has_edge(1, 2));
}

TEST_CASE("graph: every rule reproduces the projected state on random graphs") {
  Rng rng(2718);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + int(rng.next_u64() % 5);
    GraphState g = random_graph(n, 0.5, rng);
    int a = int(rng.next_u64() % n);
    for (char basis : {'X', 'Y', 'Z'}) {
      for (int outcome : {0, 1}) {
        if (basis == 'X' && g.neighbors(a).empty() && outcome == 1) continue;
        RuleCheck chk = check_measurement_rule(g, basis, a, std::nullopt, outcome);
        if (chk.probability < 1e-12) continue;
        CHECK(chk.fidelity >= 1.0 - 1e-10);
        ++checked;
      }
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("graph: X rule honors the designated neighbor") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    GraphState g = random_graph(5, 0.6, rng);
    int a = int(rng.next_u64() % 5);
    for (int b0 : g.neighbors(a)) {
      for (int outcome : {0, 1}) {
        RuleCheck chk = check_measurement_rule(g, 'X', a, b0, outcome);
        if (chk.probability < 1e-12) continue;
        CHECK(chk.fidelity >= 1.0 - 1e-10);
      }
    }
  }
  GraphState g = GraphState::from_edges(3, {{0, 1}});
  CHECK_THROWS_AS(measure_x(g, 0, 2, 0), std::invalid_argument);
}

TEST_CASE("graph: lossy check attachment") {
  // Attaching to a single vertex realizes the dense left-check circuit:
  // H on the data, then a controlled-X from each |+> ancilla.
  GraphState lone = GraphState::from_edges(1, {});
  auto [att, check] = attach_lossy_pcs_x(lone, 0);
  CHECK(att.num_vertices() == 3);
  CHECK(att.has_edge(0, check.ancillas[0]));
  CHECK(att.has_edge(0, check.ancillas[1]));

  uint32_t n = 3;
  Vec psi = Vec::Constant(8, 1.0 / std::sqrt(8.0));  // |+++>
  psi = apply_unitary_vec(psi, hadamard(), {0}, n);
  psi = apply_unitary_vec(psi, cnot(), {1, 0}, n);  // ancilla 1 controls data 0
  psi = apply_unitary_vec(psi, cnot(), {2, 0}, n);
  CHECK(overlap2(psi, att.to_state()) == doctest::Approx(1.0).epsilon(1e-10));

  // Noiseless deferred check passes with certainty; a Z fault on the data
  // flips it.
  auto completion_prob = [&](const Vec& state, int anc, int pass_outcome) {
    Vec s = apply_unitary_vec(state, cnot(), {uint32_t(anc), 0}, n);
    Mat proj = 0.5 * (Mat::Identity(2, 2) +
                      (pass_outcome == 0 ? 1.0 : -1.0) * pauli_matrix('X'));
    return project_vec(s, proj, {uint32_t(anc)}, n).first;
  };
  Vec state = att.to_state();
  CHECK(completion_prob(state, check.ancillas[0], 0) == doctest::Approx(1.0).epsilon(1e-10));
  Vec faulted = apply_unitary_vec(state, pauli_matrix('Z'), {0}, n);
  CHECK(completion_prob(faulted, check.ancillas[0], 0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(completion_prob(faulted, check.ancillas[0], 1) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(attach_lossy_pcs_x(att, 0), std::invalid_argument);
}

TEST_CASE("graph: lossy disconnect under every survival pattern") {
  // Data vertex 3 connected to the wider graph through 0, 1 (which also
  // share edges with 2).
  GraphState base = GraphState::from_edges(4, {{0, 3}, {1, 3}, {0, 2}, {1, 2}});
  auto [att, check] = attach_lossy_pcs_x(base, 3);
  std::vector<int> region = {check.data, check.ancillas[0], check.ancillas[1]};

  auto disconnected = [&](const GraphState& g) {
    for (int rv : region) {
      if (!g.has_vertex(rv)) continue;
      for (int nb : g.neighbors(rv)) {
        if (std::find(region.begin(), region.end(), nb) == region.end()) return false;
      }
    }
    return true;
  };

  std::vector<std::set<int>> patterns = {
      {check.data},
      {check.ancillas[0]},
      {check.ancillas[1]},
      {check.data, check.ancillas[0]},
      {check.ancillas[0], check.ancillas[1]},
  };
  for (const auto& surviving : patterns) {
    for (int outcome : {0, 1}) {
      GraphState cut = lossy_disconnect(att, check, surviving, outcome);
      CHECK(disconnected(cut));
      CHECK(cut.num_vertices() == att.num_vertices() - 1);
    }
  }
  CHECK_THROWS_AS(lossy_disconnect(att, check, {}, 0), std::runtime_error);

  // The measurement the disconnect performs matches the dense projection.
  RuleCheck z_path = check_measurement_rule(att, 'Z', check.data, std::nullopt, 0);
  CHECK(z_path.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  RuleCheck x_path = check_measurement_rule(att, 'X', check.ancillas[0], check.data, 1);
  CHECK(x_path.fidelity == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("graph: text form") {
  GraphState g = GraphState::from_edges(4, {{0, 1}, {2, 3}, {1, 2}});
  GraphState back = graph_from_text(graph_to_text(g));
  CHECK(graph_to_text(back) == graph_to_text(g));
  CHECK_THROWS_AS(graph_from_text("bogus"), std::invalid_argument);
}

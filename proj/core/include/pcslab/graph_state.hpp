#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pcslab/dense.hpp"

namespace pcs {

/// Single-qubit Clifford modulo global phase, stored as the conjugation
/// images of X and Z (letter in {X, Y, Z} plus sign).
class LocalClifford {
 public:
  LocalClifford() = default;  // identity

  static LocalClifford identity() { return {}; }
  static LocalClifford h();
  static LocalClifford s();
  static LocalClifford s_dag();
  static LocalClifford x();
  static LocalClifford z();
  static LocalClifford from_images(char x_letter, int x_sign, char z_letter, int z_sign);

  /// Composition "apply rhs first, then this" (operator product this * rhs).
  LocalClifford after(const LocalClifford& rhs) const;

  /// Conjugation image of a signed letter: C (sign * letter) C^dag.
  std::pair<char, int> conjugate(char letter, int sign) const;

  bool is_identity() const;
  bool operator==(const LocalClifford& rhs) const = default;

  char x_letter() const { return x_letter_; }
  int x_sign() const { return x_sign_; }
  char z_letter() const { return z_letter_; }
  int z_sign() const { return z_sign_; }

  /// A concrete 2x2 unitary realizing the images (up to global phase).
  Eigen::Matrix2cd matrix() const;

 private:
  char x_letter_ = 'X';
  int x_sign_ = 1;
  char z_letter_ = 'Z';
  int z_sign_ = 1;
};

/// Graph state with deferred per-vertex local Clifford corrections:
/// physical state = (tensor of frames) * prod_edges CZ * |+...+>.
/// Vertex ids are stable across measurements (removed vertices simply leave
/// the map); qubit order for to_state() is ascending id.
struct GraphState {
  std::map<int, std::set<int>> adj;
  std::map<int, LocalClifford> frames;  // absent entry = identity

  static GraphState from_edges(int n_vertices,
                               const std::vector<std::pair<int, int>>& edges);

  size_t num_vertices() const { return adj.size(); }
  std::vector<int> vertices() const;
  bool has_vertex(int v) const { return adj.count(v) != 0; }
  bool has_edge(int u, int v) const;
  const std::set<int>& neighbors(int v) const;

  void add_vertex(int v);
  void add_edge(int u, int v);
  void toggle_edge(int u, int v);

  LocalClifford frame_of(int v) const;
  void compose_frame(int v, const LocalClifford& correction);

  /// Dense statevector (qubit i = i-th smallest vertex id).
  Vec to_state() const;
};

/// Toggles the edges among the neighborhood of `a` and updates the local
/// frames so to_state() is unchanged.
GraphState local_complement(const GraphState& g, int a);

/// Pauli measurement rules.  The measured vertex is removed; `outcome` 0 is
/// the +1 eigenvalue branch.  X measurement of a connected vertex needs a
/// designated neighbor b0 (defaults to the smallest); measuring X on an
/// isolated vertex with outcome 1 is an impossible branch and throws.
GraphState measure_x(const GraphState& g, int a, std::optional<int> b0, int outcome);
GraphState measure_y(const GraphState& g, int a, int outcome);
GraphState measure_z(const GraphState& g, int a, int outcome);

/// Two leaf check ancillas attached to `data_vertex` with an H folded into
/// the data frame; the deferred check is completed by a controlled-X from
/// each ancilla onto the data followed by an X-basis ancilla measurement
/// (outcome + passes).  Requires an identity frame on the data vertex.
struct LossyCheck {
  int data = -1;
  std::array<int, 2> ancillas{-1, -1};
};

std::pair<GraphState, LossyCheck> attach_lossy_pcs_x(const GraphState& g, int data_vertex);

/// Disconnects the {data, two ancillas} region from the rest of the graph by
/// the single measurement the survival pattern allows: Z on the data when it
/// survives, else X on a surviving ancilla.  Throws std::runtime_error when
/// nothing survives.  Lost vertices remain as isolated vertices.
GraphState lossy_disconnect(const GraphState& g, const LossyCheck& region,
                            const std::set<int>& surviving, int outcome);

/// Plain-text edge list: first line "n <count>", then "<u> <v>" per edge.
std::string graph_to_text(const GraphState& g);
GraphState graph_from_text(const std::string& text);

/// Dense cross-check of one measurement rule: projects the input state
/// directly (the frame on the measured vertex rotates the physical basis)
/// and reports the branch probability plus the fidelity between the
/// projected state and the rule-produced (graph, corrections) state.
/// Fidelity is NaN when the branch probability vanishes.
struct RuleCheck {
  double probability = 0.0;
  double fidelity = 0.0;
};

RuleCheck check_measurement_rule(const GraphState& before, char basis, int a,
                                 std::optional<int> b0, int outcome);

}  // namespace pcs

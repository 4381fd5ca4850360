#include "pcslab/graph_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pcs {

namespace {

int letter_index(char l) {
  switch (l) {
    case 'X': return 0;
    case 'Y': return 1;
    case 'Z': return 2;
  }
  throw std::invalid_argument("LocalClifford images must be X, Y or Z");
}

// Y image from X and Z images: Y = i X Z, so C Y C^dag = i (CXC)(CZC).
std::pair<char, int> y_image(char xl, int xs, char zl, int zs) {
  // Products of distinct letters: XZ = -iY, ZX = iY, XY = iZ, YX = -iZ,
  // YZ = iX, ZY = -iX.  Here the letters are guaranteed distinct.
  static const std::map<std::pair<char, char>, std::pair<char, int>> tbl = {
      {{'X', 'Z'}, {'Y', -1}}, {{'Z', 'X'}, {'Y', +1}}, {{'X', 'Y'}, {'Z', +1}},
      {{'Y', 'X'}, {'Z', -1}}, {{'Y', 'Z'}, {'X', +1}}, {{'Z', 'Y'}, {'X', -1}}};
  // i * (xs*zs) * (xl zl) where (xl zl) = (i^k) letter: fold the i from Y.
  auto it = tbl.find({xl, zl});
  if (it == tbl.end()) throw std::logic_error("degenerate Clifford images");
  // tbl gives xl*zl = sign * i * letter; multiply by leading i: i * i = -1.
  return {it->second.first, -1 * it->second.second * xs * zs};
}

}  // namespace

LocalClifford LocalClifford::from_images(char x_letter, int x_sign, char z_letter,
                                         int z_sign) {
  if (letter_index(x_letter) == letter_index(z_letter)) {
    throw std::invalid_argument("X and Z images must differ");
  }
  LocalClifford c;
  c.x_letter_ = x_letter;
  c.x_sign_ = x_sign;
  c.z_letter_ = z_letter;
  c.z_sign_ = z_sign;
  return c;
}

LocalClifford LocalClifford::h() { return from_images('Z', 1, 'X', 1); }
LocalClifford LocalClifford::s() { return from_images('Y', 1, 'Z', 1); }
LocalClifford LocalClifford::s_dag() { return from_images('Y', -1, 'Z', 1); }
LocalClifford LocalClifford::x() { return from_images('X', 1, 'Z', -1); }
LocalClifford LocalClifford::z() { return from_images('X', -1, 'Z', 1); }

std::pair<char, int> LocalClifford::conjugate(char letter, int sign) const {
  switch (letter) {
    case 'X': return {x_letter_, sign * x_sign_};
    case 'Z': return {z_letter_, sign * z_sign_};
    case 'Y': {
      auto [l, s] = y_image(x_letter_, x_sign_, z_letter_, z_sign_);
      return {l, sign * s};
    }
  }
  throw std::invalid_argument("conjugate expects X, Y or Z");
}

LocalClifford LocalClifford::after(const LocalClifford& rhs) const {
  // (this * rhs) P (this * rhs)^dag = this (rhs P rhs^dag) this^dag.
  auto [xl, xs] = rhs.conjugate('X', 1);
  auto [xl2, xs2] = conjugate(xl, xs);
  auto [zl, zs] = rhs.conjugate('Z', 1);
  auto [zl2, zs2] = conjugate(zl, zs);
  return from_images(xl2, xs2, zl2, zs2);
}

bool LocalClifford::is_identity() const {
  return x_letter_ == 'X' && x_sign_ == 1 && z_letter_ == 'Z' && z_sign_ == 1;
}

Eigen::Matrix2cd LocalClifford::matrix() const {
  // One-time table of all 24 image pairs from words over {H, S}.
  struct Key {
    char xl;
    int xs;
    char zl;
    int zs;
    bool operator<(const Key& o) const {
      return std::tie(xl, xs, zl, zs) < std::tie(o.xl, o.xs, o.zl, o.zs);
    }
  };
  static const std::map<Key, Eigen::Matrix2cd> table = [] {
    std::map<Key, Eigen::Matrix2cd> tbl;
    std::vector<std::pair<LocalClifford, Eigen::Matrix2cd>> frontier = {
        {LocalClifford::identity(), Eigen::Matrix2cd::Identity()}};
    auto key_of = [](const LocalClifford& c) {
      return Key{c.x_letter(), c.x_sign(), c.z_letter(), c.z_sign()};
    };
    tbl[key_of(frontier[0].first)] = frontier[0].second;
    Eigen::Matrix2cd hm = hadamard(), sm = s_gate();
    while (!frontier.empty()) {
      std::vector<std::pair<LocalClifford, Eigen::Matrix2cd>> next;
      for (const auto& [c, m] : frontier) {
        for (int gen = 0; gen < 2; ++gen) {
          LocalClifford c2 =
              (gen == 0 ? LocalClifford::h() : LocalClifford::s()).after(c);
          Eigen::Matrix2cd m2 = (gen == 0 ? hm : sm) * m;
          if (!tbl.count(key_of(c2))) {
            tbl[key_of(c2)] = m2;
            next.emplace_back(c2, m2);
          }
        }
      }
      frontier = std::move(next);
    }
    if (tbl.size() != 24) throw std::logic_error("Clifford table generation failed");
    return tbl;
  }();
  auto it = table.find(Key{x_letter_, x_sign_, z_letter_, z_sign_});
  if (it == table.end()) throw std::logic_error("unknown Clifford image pair");
  return it->second;
}

GraphState GraphState::from_edges(int n_vertices,
                                  const std::vector<std::pair<int, int>>& edges) {
  GraphState g;
  for (int v = 0; v < n_vertices; ++v) g.adj[v];
  for (auto [u, v] : edges) {
    if (!g.has_vertex(u) || !g.has_vertex(v)) throw std::out_of_range("edge endpoint");
    g.add_edge(u, v);
  }
  return g;
}

std::vector<int> GraphState::vertices() const {
  std::vector<int> out;
  out.reserve(adj.size());
  for (const auto& [v, _] : adj) out.push_back(v);
  return out;
}

bool GraphState::has_edge(int u, int v) const {
  auto it = adj.find(u);
  return it != adj.end() && it->second.count(v);
}

const std::set<int>& GraphState::neighbors(int v) const {
  auto it = adj.find(v);
  if (it == adj.end()) throw std::out_of_range("no such vertex");
  return it->second;
}

void GraphState::add_vertex(int v) { adj[v]; }

void GraphState::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  adj.at(u).insert(v);
  adj.at(v).insert(u);
}

void GraphState::toggle_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (has_edge(u, v)) {
    adj.at(u).erase(v);
    adj.at(v).erase(u);
  } else {
    add_edge(u, v);
  }
}

LocalClifford GraphState::frame_of(int v) const {
  auto it = frames.find(v);
  return it == frames.end() ? LocalClifford::identity() : it->second;
}

void GraphState::compose_frame(int v, const LocalClifford& correction) {
  LocalClifford next = frame_of(v).after(correction);
  if (next.is_identity()) {
    frames.erase(v);
  } else {
    frames[v] = next;
  }
}

Vec GraphState::to_state() const {
  uint32_t n = static_cast<uint32_t>(adj.size());
  if (n == 0 || n > kMaxStatevecQubits) {
    throw std::length_error("graph statevector limited to 1..14 vertices");
  }
  std::vector<int> vs = vertices();
  std::map<int, uint32_t> pos;
  for (uint32_t i = 0; i < n; ++i) pos[vs[i]] = i;

  uint64_t dim = uint64_t(1) << n;
  Vec psi = Vec::Constant(dim, 1.0 / std::sqrt(double(dim)));
  // CZ per edge: flip sign where both bits are 1.
  for (const auto& [u, nbrs] : adj) {
    for (int v : nbrs) {
      if (v <= u) continue;
      uint64_t bu = uint64_t(1) << (n - 1 - pos[u]);
      uint64_t bv = uint64_t(1) << (n - 1 - pos[v]);
      for (uint64_t i = 0; i < dim; ++i) {
        if ((i & bu) && (i & bv)) psi(i) = -psi(i);
      }
    }
  }
  for (const auto& [v, f] : frames) {
    if (f.is_identity()) continue;
    psi = apply_unitary_vec(psi, f.matrix(), {pos.at(v)}, n);
  }
  return psi;
}

GraphState local_complement(const GraphState& g, int a) {
  if (!g.has_vertex(a)) throw std::out_of_range("no such vertex");
  GraphState out = g;
  std::vector<int> nbrs(g.neighbors(a).begin(), g.neighbors(a).end());
  for (size_t i = 0; i < nbrs.size(); ++i) {
    for (size_t j = i + 1; j < nbrs.size(); ++j) {
      out.toggle_edge(nbrs[i], nbrs[j]);
    }
  }
  // |tau_a(G)> = U |G> with U = sqrt(-iX)_a (x) sqrt(iZ)_{N(a)}; replacing the
  // graph keeps the state if U^dag joins the frames.
  out.compose_frame(a, LocalClifford::from_images('X', 1, 'Y', 1));  // exp(+i pi/4 X)
  for (int b : nbrs) {
    out.compose_frame(b, LocalClifford::from_images('Y', 1, 'Z', 1));  // exp(-i pi/4 Z)
  }
  return out;
}

namespace {

void erase_vertex(GraphState& g, int a) {
  for (int b : g.adj.at(a)) g.adj.at(b).erase(a);
  g.adj.erase(a);
  g.frames.erase(a);
}

void apply_z_corrections(GraphState& g, const std::set<int>& targets) {
  for (int v : targets) g.compose_frame(v, LocalClifford::z());
}

}  // namespace

GraphState measure_z(const GraphState& g, int a, int outcome) {
  if (!g.has_vertex(a)) throw std::out_of_range("no such vertex");
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  GraphState out = g;
  std::set<int> nbrs = g.neighbors(a);
  erase_vertex(out, a);
  if (outcome == 1) apply_z_corrections(out, nbrs);
  return out;
}

GraphState measure_y(const GraphState& g, int a, int outcome) {
  if (!g.has_vertex(a)) throw std::out_of_range("no such vertex");
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  GraphState out = local_complement(g, a);
  // local_complement tracked frames to preserve the state; the measurement
  // rule instead wants the bare graph tau_a(G), so reset the touched frames
  // and install the rule's corrections.
  out.frames = g.frames;
  std::set<int> nbrs = g.neighbors(a);
  erase_vertex(out, a);
  LocalClifford corr = outcome == 0 ? LocalClifford::s() : LocalClifford::s_dag();
  for (int b : nbrs) out.compose_frame(b, corr);
  return out;
}

GraphState measure_x(const GraphState& g, int a, std::optional<int> b0_opt, int outcome) {
  if (!g.has_vertex(a)) throw std::out_of_range("no such vertex");
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  const std::set<int>& na = g.neighbors(a);
  if (na.empty()) {
    if (outcome == 1) {
      throw std::domain_error("X measurement of an isolated vertex cannot yield -");
    }
    GraphState out = g;
    erase_vertex(out, a);
    return out;
  }
  int b0 = b0_opt.value_or(*na.begin());
  if (!na.count(b0)) throw std::invalid_argument("designated neighbor is not adjacent");

  // Graph part: tau_b0(tau_a(tau_b0(G))) - a, frames untouched by the taus.
  GraphState work = g;
  auto bare_lc = [](GraphState& s, int v) {
    std::vector<int> nbrs(s.neighbors(v).begin(), s.neighbors(v).end());
    for (size_t i = 0; i < nbrs.size(); ++i) {
      for (size_t j = i + 1; j < nbrs.size(); ++j) s.toggle_edge(nbrs[i], nbrs[j]);
    }
  };
  bare_lc(work, b0);
  bare_lc(work, a);
  bare_lc(work, b0);
  std::set<int> nb0 = g.neighbors(b0);
  erase_vertex(work, a);

  // Corrections use the original graph's neighborhoods.
  if (outcome == 0) {
    work.compose_frame(b0, LocalClifford::h().after(LocalClifford::x()));  // O = H X
    std::set<int> zs;
    for (int v : na) {
      if (v != b0 && !nb0.count(v)) zs.insert(v);
    }
    apply_z_corrections(work, zs);
  } else {
    work.compose_frame(b0, LocalClifford::x().after(LocalClifford::h()));  // O^dag = X H
    std::set<int> zs;
    for (int v : nb0) {
      if (v != a && !na.count(v)) zs.insert(v);
    }
    apply_z_corrections(work, zs);
  }
  return work;
}

std::pair<GraphState, LossyCheck> attach_lossy_pcs_x(const GraphState& g, int data_vertex) {
  if (!g.has_vertex(data_vertex)) throw std::out_of_range("no such vertex");
  if (!g.frame_of(data_vertex).is_identity()) {
    throw std::invalid_argument("check attachment requires an identity frame on the data");
  }
  GraphState out = g;
  int next = g.adj.empty() ? 0 : g.adj.rbegin()->first + 1;
  LossyCheck check;
  check.data = data_vertex;
  check.ancillas = {next, next + 1};
  out.add_vertex(next);
  out.add_vertex(next + 1);
  out.add_edge(next, data_vertex);
  out.add_edge(next + 1, data_vertex);
  out.compose_frame(data_vertex, LocalClifford::h());
  return {out, check};
}

GraphState lossy_disconnect(const GraphState& g, const LossyCheck& region,
                            const std::set<int>& surviving, int outcome) {
  if (surviving.count(region.data)) {
    return measure_z(g, region.data, outcome);
  }
  for (int anc : region.ancillas) {
    if (surviving.count(anc)) {
      return measure_x(g, anc, region.data, outcome);
    }
  }
  throw std::runtime_error("entire region lost: disconnect impossible");
}

std::string graph_to_text(const GraphState& g) {
  std::ostringstream os;
  os << "n " << g.num_vertices() << "\n";
  for (const auto& [u, nbrs] : g.adj) {
    for (int v : nbrs) {
      if (u < v) os << u << " " << v << "\n";
    }
  }
  return os.str();
}

GraphState graph_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  if (!(is >> word) || word != "n") throw std::invalid_argument("expected 'n <count>'");
  int n = 0;
  is >> n;
  std::vector<std::pair<int, int>> edges;
  int u, v;
  while (is >> u >> v) edges.emplace_back(u, v);
  return GraphState::from_edges(n, edges);
}

RuleCheck check_measurement_rule(const GraphState& before, char basis, int a,
                                 std::optional<int> b0, int outcome) {
  std::vector<int> vs = before.vertices();
  uint32_t n = static_cast<uint32_t>(vs.size());
  uint32_t pos_a = 0;
  std::map<int, uint32_t> pos;
  for (uint32_t i = 0; i < n; ++i) {
    pos[vs[i]] = i;
    if (vs[i] == a) pos_a = i;
  }

  // The rules measure in the graph basis of the measured vertex; a frame C_a
  // rotates the physical projector to C_a P C_a^dag.
  Mat p = pauli_matrix(basis);
  Mat proj = 0.5 * (Mat::Identity(2, 2) + (outcome == 0 ? 1.0 : -1.0) * p);
  Eigen::Matrix2cd ca = before.frame_of(a).matrix();
  Mat rotated = ca * proj * ca.adjoint();

  Vec psi = before.to_state();
  auto [prob, projected] = project_vec(psi, rotated, {pos_a}, n);
  RuleCheck res;
  res.probability = prob;
  if (prob <= kBranchTol) {
    res.fidelity = std::numeric_limits<double>::quiet_NaN();
    return res;
  }

  GraphState after = basis == 'X'   ? measure_x(before, a, b0, outcome)
                     : basis == 'Y' ? measure_y(before, a, outcome)
                                    : measure_z(before, a, outcome);

  // Rebuild the full-space state: rule state on the survivors, tensored with
  // the measured qubit's post-measurement factor C_a |p_outcome>.
  Vec eigvec(2);
  switch (basis) {
    case 'X': eigvec << 1.0 / std::sqrt(2.0), (outcome == 0 ? 1.0 : -1.0) / std::sqrt(2.0); break;
    case 'Y': eigvec << 1.0 / std::sqrt(2.0), Cplx(0, outcome == 0 ? 1.0 : -1.0) / std::sqrt(2.0); break;
    case 'Z': eigvec << (outcome == 0 ? 1.0 : 0.0), (outcome == 0 ? 0.0 : 1.0); break;
    default: throw std::invalid_argument("basis must be X, Y or Z");
  }
  Vec measured_factor = ca * eigvec;

  uint64_t dim = uint64_t(1) << n;
  Vec full = Vec::Zero(dim);
  uint64_t bit_a = uint64_t(1) << (n - 1 - pos_a);
  if (n == 1) {
    full = measured_factor;
  } else {
    Vec small = after.to_state();
    // Survivor qubit order matches `after.vertices()` (same ascending ids).
    for (uint64_t i = 0; i < dim; ++i) {
      uint64_t rest = 0;
      uint32_t out_bit = 0;
      for (uint32_t q = 0; q < n; ++q) {
        if (q == pos_a) continue;
        uint64_t b = (i >> (n - 1 - q)) & 1u;
        rest |= b << (n - 2 - out_bit);
        ++out_bit;
      }
      full(i) = small(rest) * measured_factor((i & bit_a) ? 1 : 0);
    }
  }
  res.fidelity = overlap2(projected, full);
  return res;
}

}  // namespace pcs

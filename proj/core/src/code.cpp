#include "pcslab/code.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "pcslab/protocols.hpp"

namespace pcs {

namespace {

PauliString conjugate_through(PauliString p, const Circuit& fragment) {
  for (const auto& op : fragment.ops) {
    const auto* g = std::get_if<Gate>(&op);
    if (!g) throw std::invalid_argument("encoding fragment must be a pure gate list");
    conjugate_by_gate(p, *g);
  }
  return p;
}

// Row-reduces the (x|z) GF(2) matrix of `gens`; returns pivots used.
uint32_t gf2_rank(std::vector<std::pair<uint64_t, uint64_t>> rows) {
  uint32_t rank = 0;
  for (int bit = 127; bit >= 0; --bit) {
    uint64_t xm = bit >= 64 ? (uint64_t(1) << (bit - 64)) : 0;
    uint64_t zm = bit < 64 ? (uint64_t(1) << bit) : 0;
    auto has_bit = [&](const std::pair<uint64_t, uint64_t>& r) {
      return bit >= 64 ? (r.first & xm) : (r.second & zm);
    };
    size_t pivot = SIZE_MAX;
    for (size_t i = rank; i < rows.size(); ++i) {
      if (has_bit(rows[i])) {
        pivot = i;
        break;
      }
    }
    if (pivot == SIZE_MAX) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && has_bit(rows[i])) {
        rows[i].first ^= rows[rank].first;
        rows[i].second ^= rows[rank].second;
      }
    }
    ++rank;
    if (rank == rows.size()) break;
  }
  return rank;
}

std::vector<std::pair<uint64_t, uint64_t>> to_rows(const std::vector<PauliString>& gens) {
  std::vector<std::pair<uint64_t, uint64_t>> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.emplace_back(g.xs(), g.zs());
  return rows;
}

}  // namespace

void CodeSpec::validate() const {
  for (size_t i = 0; i < generators.size(); ++i) {
    for (size_t j = i + 1; j < generators.size(); ++j) {
      if (!generators[i].commutes_with(generators[j])) {
        throw std::logic_error("code generators do not commute");
      }
    }
    if (!logical_x.commutes_with(generators[i]) || !logical_z.commutes_with(generators[i])) {
      throw std::logic_error("logical operator fails to commute with a generator");
    }
  }
  if (logical_x.commutes_with(logical_z)) {
    throw std::logic_error("logical X and Z must anticommute");
  }
  if (symplectic_rank(generators) != generators.size()) {
    throw std::logic_error("code generators are dependent");
  }
  if (n - generators.size() != k) {
    throw std::logic_error("generator count inconsistent with (n, k)");
  }
}

CodeSpec extract_code(const Circuit& fragment, uint32_t data_qubit) {
  if (data_qubit >= fragment.n_qubits) throw std::out_of_range("data qubit out of range");
  CodeSpec code;
  code.n = fragment.n_qubits;
  for (uint32_t q = 0; q < fragment.n_qubits; ++q) {
    if (q == data_qubit) continue;
    code.generators.push_back(
        conjugate_through(PauliString::single(fragment.n_qubits, q, 'X'), fragment));
  }
  code.logical_x =
      conjugate_through(PauliString::single(fragment.n_qubits, data_qubit, 'X'), fragment);
  code.logical_z =
      conjugate_through(PauliString::single(fragment.n_qubits, data_qubit, 'Z'), fragment);
  code.k = code.n - static_cast<uint32_t>(code.generators.size());
  code.validate();
  return code;
}

uint32_t symplectic_rank(const std::vector<PauliString>& gens) {
  return gf2_rank(to_rows(gens));
}

bool in_group(const std::vector<PauliString>& gens, const PauliString& p) {
  auto rows = to_rows(gens);
  uint32_t base = gf2_rank(rows);
  rows.emplace_back(p.xs(), p.zs());
  return gf2_rank(rows) == base;
}

DistanceResult distance(const CodeSpec& code, uint32_t cap) {
  if (cap < 1) throw std::invalid_argument("distance cap must be >= 1");
  if (code.n > 24) throw std::length_error("distance enumeration limited to n <= 24");
  DistanceResult res;
  res.searched_up_to = cap;

  std::vector<uint32_t> support;
  const char letters[3] = {'X', 'Y', 'Z'};

  // Enumerate supports of each weight, then 3^w letter choices.
  std::function<bool(uint32_t, uint32_t, std::vector<uint32_t>&)> scan_support =
      [&](uint32_t start, uint32_t remaining, std::vector<uint32_t>& chosen) -> bool {
    if (remaining == 0) {
      uint64_t count = 1;
      for (size_t i = 0; i < chosen.size(); ++i) count *= 3;
      for (uint64_t pick = 0; pick < count; ++pick) {
        PauliString p = PauliString::identity(code.n);
        uint64_t v = pick;
        for (uint32_t q : chosen) {
          p.set_letter(q, letters[v % 3]);
          v /= 3;
        }
        bool commutes_all = true;
        for (const auto& g : code.generators) {
          if (!p.commutes_with(g)) {
            commutes_all = false;
            break;
          }
        }
        if (commutes_all && !in_group(code.generators, p)) {
          res.witness = p;
          return true;
        }
      }
      return false;
    }
    for (uint32_t q = start; q + remaining <= code.n; ++q) {
      chosen.push_back(q);
      if (scan_support(q + 1, remaining - 1, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  };

  for (uint32_t w = 1; w <= cap; ++w) {
    std::vector<uint32_t> chosen;
    if (scan_support(0, w, chosen)) {
      res.distance = w;
      return res;
    }
  }
  return res;
}

GeneratingSet min_weight_generating_set(const CodeSpec& code, uint32_t product_budget) {
  // Candidate pool: products of up to `product_budget` extracted generators,
  // sorted by (weight, factor count).  Greedy independent selection from the
  // lightest candidates minimizes the maximum weight over this pool.
  struct Candidate {
    PauliString p;
    uint32_t weight;
    uint32_t factors;
  };
  std::vector<Candidate> pool;
  size_t m = code.generators.size();
  for (uint64_t mask = 1; mask < (uint64_t(1) << m); ++mask) {
    uint32_t bits = static_cast<uint32_t>(__builtin_popcountll(mask));
    if (bits > product_budget) continue;
    PauliString p = PauliString::identity(code.n);
    for (size_t i = 0; i < m; ++i) {
      if (mask & (uint64_t(1) << i)) p = p * code.generators[i];
    }
    pool.push_back({p, p.weight(), bits});
  }
  std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.factors < b.factors;
  });

  GeneratingSet out;
  for (const auto& cand : pool) {
    if (out.generators.size() == m) break;
    auto trial = out.generators;
    trial.push_back(cand.p);
    if (symplectic_rank(trial) == trial.size()) {
      out.generators = std::move(trial);
      out.max_weight = std::max(out.max_weight, cand.weight);
    }
  }
  if (out.generators.size() != m) throw std::logic_error("generating set search fell short");
  return out;
}

CssResult css_equivalence_check(const CodeSpec& code, const std::set<uint32_t>& h_pattern) {
  std::vector<PauliString> gens = code.generators;
  for (auto& g : gens) {
    for (uint32_t q : h_pattern) {
      if (q < code.n) conjugate_by_gate(g, Gate{GateKind::H, q});
    }
  }

  // The group has a pure-type basis iff rank(pure-X subgroup) +
  // rank(pure-Z subgroup) equals the full rank.  Pure-type subgroup bases
  // come from nullspaces of the opposite-part GF(2) matrix.
  size_t m = gens.size();
  auto subgroup_basis = [&](bool pure_x) {
    // Solve sum_i c_i * part(g_i) = 0 where part is the Z part for pure-X.
    std::vector<uint64_t> part(m);
    for (size_t i = 0; i < m; ++i) part[i] = pure_x ? gens[i].zs() : gens[i].xs();
    // Gaussian elimination on columns of the m x n matrix (rows = gens).
    std::vector<uint64_t> rows = part;
    std::vector<uint64_t> combo(m);
    for (size_t i = 0; i < m; ++i) combo[i] = uint64_t(1) << i;
    size_t rank = 0;
    for (int bit = 63; bit >= 0 && rank < m; --bit) {
      uint64_t bm = uint64_t(1) << bit;
      size_t pivot = SIZE_MAX;
      for (size_t i = rank; i < m; ++i) {
        if (rows[i] & bm) {
          pivot = i;
          break;
        }
      }
      if (pivot == SIZE_MAX) continue;
      std::swap(rows[rank], rows[pivot]);
      std::swap(combo[rank], combo[pivot]);
      for (size_t i = 0; i < m; ++i) {
        if (i != rank && (rows[i] & bm)) {
          rows[i] ^= rows[rank];
          combo[i] ^= combo[rank];
        }
      }
      ++rank;
    }
    std::vector<PauliString> basis;
    for (size_t i = rank; i < m; ++i) {
      PauliString p = PauliString::identity(code.n);
      for (size_t j = 0; j < m; ++j) {
        if (combo[i] & (uint64_t(1) << j)) p = p * gens[j];
      }
      basis.push_back(p);
    }
    return basis;
  };

  auto xs = subgroup_basis(true);
  auto zs = subgroup_basis(false);
  CssResult res;
  std::vector<PauliString> joint = xs;
  joint.insert(joint.end(), zs.begin(), zs.end());
  res.is_css = symplectic_rank(joint) == m && xs.size() + zs.size() == m;
  if (res.is_css) res.transformed = std::move(joint);
  return res;
}

std::set<uint32_t> css_h_pattern(uint32_t r) {
  std::set<uint32_t> pattern;
  uint32_t n = 2 * r + 3;  // data + (2 + 2r) ancillas
  for (uint32_t base = 2; base < n; base += 4) {
    pattern.insert(base);
    if (base + 1 < n) pattern.insert(base + 1);
  }
  return pattern;
}

uint32_t syndrome_of(uint32_t r, const PauliString& error) {
  SideCircuit side = build_pcs_side_full(r);
  const Circuit& c = side.circuit;
  if (error.num_qubits() != c.n_qubits) throw std::invalid_argument("error width mismatch");

  PauliString err = error;
  uint32_t syndrome = 0;
  size_t meas_index = 0;
  for (size_t i = side.error_insertion_index; i < c.ops.size(); ++i) {
    if (const auto* g = std::get_if<Gate>(&c.ops[i])) {
      conjugate_by_gate(err, *g);
    } else if (const auto* m = std::get_if<MeasureZ>(&c.ops[i])) {
      // Ancilla a_{i+1} measured in order; flip iff the error anticommutes
      // with Z there (the preceding H already folded the X basis to Z).
      if (err.x_bit(m->qubit)) syndrome |= uint32_t(1) << meas_index;
      ++meas_index;
    }
  }
  return syndrome;
}

SyndromeTable syndrome_table(uint32_t r, uint32_t max_weight) {
  if (max_weight > 2) throw std::invalid_argument("syndrome table capped at weight 2");
  uint32_t n = 2 * r + 3;
  SyndromeTable table;
  table.n_checks = n - 1;

  const char letters[3] = {'X', 'Y', 'Z'};
  auto record = [&](const PauliString& e) {
    table.by_syndrome[syndrome_of(r, e)].push_back(e);
  };

  record(PauliString::identity(n));
  if (max_weight >= 1) {
    for (uint32_t q = 0; q < n; ++q) {
      for (char l : letters) record(PauliString::single(n, q, l));
    }
  }
  if (max_weight >= 2) {
    for (uint32_t q0 = 0; q0 < n; ++q0) {
      for (uint32_t q1 = q0 + 1; q1 < n; ++q1) {
        for (char l0 : letters) {
          for (char l1 : letters) {
            PauliString p = PauliString::identity(n);
            p.set_letter(q0, l0);
            p.set_letter(q1, l1);
            record(p);
          }
        }
      }
    }
  }
  return table;
}

std::string SyndromeTable::syndrome_string(uint32_t key) const {
  std::string s(n_checks, '0');
  for (uint32_t i = 0; i < n_checks; ++i) {
    if (key & (uint32_t(1) << i)) s[i] = '1';
  }
  return s;
}

}  // namespace pcs

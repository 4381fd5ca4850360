#include "pcslab/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pcs {

bool is_two_qubit(GateKind k) { return k == GateKind::CX || k == GateKind::CZ; }

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
  }
  return "?";
}

void NoiseSite::validate() const {
  double sum = 0;
  for (double p : probs) {
    if (p < -1e-15 || p > 1 + 1e-15) throw std::invalid_argument("noise probability out of [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("noise probabilities must sum to 1");
  }
}

void Circuit::add_gate(GateKind k, uint32_t q0, uint32_t q1) {
  ops.push_back(Gate{k, q0, q1});
}

void Circuit::add_noise(uint32_t qubit, const std::array<double, 4>& probs) {
  NoiseSite s{qubit, probs};
  s.validate();
  ops.push_back(s);
}

void Circuit::add_measure_z(uint32_t qubit, std::string label) {
  ops.push_back(MeasureZ{qubit, std::move(label)});
}

void Circuit::add_parity(std::vector<std::string> labels, int required) {
  ops.push_back(ParityCondition{std::move(labels), required});
}

void Circuit::add_frame(std::string label, char letter, uint32_t qubit) {
  ops.push_back(FrameRule{std::move(label), letter, qubit});
}

size_t Circuit::num_noise_sites() const {
  size_t n = 0;
  for (const auto& op : ops) n += std::holds_alternative<NoiseSite>(op);
  return n;
}

size_t Circuit::num_measurements() const {
  size_t n = 0;
  for (const auto& op : ops) n += std::holds_alternative<MeasureZ>(op);
  return n;
}

std::vector<std::string> Circuit::measurement_labels() const {
  std::vector<std::string> out;
  for (const auto& op : ops) {
    if (const auto* m = std::get_if<MeasureZ>(&op)) out.push_back(m->label);
  }
  return out;
}

void Circuit::validate() const {
  std::set<std::string> seen;
  auto check_q = [&](uint32_t q) {
    if (q >= n_qubits) throw std::invalid_argument("qubit index out of range");
  };
  for (const auto& op : ops) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      check_q(g->q0);
      if (is_two_qubit(g->kind)) {
        check_q(g->q1);
        if (g->q0 == g->q1) throw std::invalid_argument("two-qubit gate needs distinct qubits");
      }
    } else if (const auto* s = std::get_if<NoiseSite>(&op)) {
      check_q(s->qubit);
      s->validate();
    } else if (const auto* m = std::get_if<MeasureZ>(&op)) {
      check_q(m->qubit);
      if (!seen.insert(m->label).second) {
        throw std::invalid_argument("duplicate measurement label: " + m->label);
      }
    } else if (const auto* p = std::get_if<ParityCondition>(&op)) {
      for (const auto& l : p->labels) {
        if (!seen.count(l)) {
          throw std::invalid_argument("parity condition references unknown label: " + l);
        }
      }
    } else if (const auto* f = std::get_if<FrameRule>(&op)) {
      check_q(f->qubit);
      if (!seen.count(f->label)) {
        throw std::invalid_argument("frame rule references unknown label: " + f->label);
      }
      if (f->letter != 'X' && f->letter != 'Y' && f->letter != 'Z') {
        throw std::invalid_argument("frame rule letter must be X, Y or Z");
      }
    }
  }
  if (data_qubits) {
    check_q(data_qubits->first);
    check_q(data_qubits->second);
  }
}

void conjugate_by_gate(PauliString& p, const Gate& g) {
  uint64_t b0 = uint64_t(1) << g.q0;
  bool x0 = p.xs() & b0, z0 = p.zs() & b0;
  uint64_t xs = p.xs(), zs = p.zs();
  uint8_t phase = p.phase_exponent();
  auto flip = [&]() { phase = (phase + 2) & 3; };

  switch (g.kind) {
    case GateKind::H:
      if (x0 && z0) flip();
      xs = (xs & ~b0) | (z0 ? b0 : 0);
      zs = (zs & ~b0) | (x0 ? b0 : 0);
      break;
    case GateKind::S:
      if (x0) {
        if (z0) flip();
        zs ^= b0;
      }
      break;
    case GateKind::X:
      if (z0) flip();
      break;
    case GateKind::Y:
      if (x0 != z0) flip();
      break;
    case GateKind::Z:
      if (x0) flip();
      break;
    case GateKind::CX: {
      uint64_t b1 = uint64_t(1) << g.q1;
      bool xc = xs & b0, zc = zs & b0, xt = xs & b1, zt = zs & b1;
      if (xc && zt && (xt == zc)) flip();
      if (xc) xs ^= b1;
      if (zt) zs ^= b0;
      break;
    }
    case GateKind::CZ: {
      uint64_t b1 = uint64_t(1) << g.q1;
      bool xc = xs & b0, zc = zs & b0, xt = xs & b1, zt = zs & b1;
      if (xc && xt && (zc != zt)) flip();
      if (xc) zs ^= b1;
      if (xt) zs ^= b0;
      break;
    }
  }
  p = PauliString(p.num_qubits(), xs, zs, phase);
}

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n_qubits << "\n";
  if (c.data_qubits) {
    os << "data " << c.data_qubits->first << " " << c.data_qubits->second << "\n";
  }
  char buf[64];
  for (const auto& op : c.ops) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      os << gate_name(g->kind) << " " << g->q0;
      if (is_two_qubit(g->kind)) os << " " << g->q1;
      os << "\n";
    } else if (const auto* s = std::get_if<NoiseSite>(&op)) {
      os << "noise " << s->qubit;
      for (double p : s->probs) {
        std::snprintf(buf, sizeof buf, " %.17g", p);
        os << buf;
      }
      os << "\n";
    } else if (const auto* m = std::get_if<MeasureZ>(&op)) {
      os << "mz " << m->qubit << " " << m->label << "\n";
    } else if (const auto* p = std::get_if<ParityCondition>(&op)) {
      os << "parity";
      for (const auto& l : p->labels) os << " " << l;
      os << " = " << p->required << "\n";
    } else if (const auto* f = std::get_if<FrameRule>(&op)) {
      os << "frame " << f->label << " " << f->letter << " " << f->qubit << "\n";
    }
  }
  return os.str();
}

Circuit circuit_from_text(const std::string& text) {
  Circuit c;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "qubits") {
      ls >> c.n_qubits;
    } else if (word == "data") {
      uint32_t a, b;
      ls >> a >> b;
      c.data_qubits = {a, b};
    } else if (word == "noise") {
      NoiseSite s{};
      ls >> s.qubit >> s.probs[0] >> s.probs[1] >> s.probs[2] >> s.probs[3];
      c.ops.push_back(s);
    } else if (word == "mz") {
      MeasureZ m;
      ls >> m.qubit >> m.label;
      c.ops.push_back(m);
    } else if (word == "parity") {
      ParityCondition p;
      std::string tok;
      while (ls >> tok && tok != "=") p.labels.push_back(tok);
      ls >> p.required;
      c.ops.push_back(p);
    } else if (word == "frame") {
      FrameRule f;
      ls >> f.label >> f.letter >> f.qubit;
      c.ops.push_back(f);
    } else {
      static const std::pair<const char*, GateKind> kGates[] = {
          {"h", GateKind::H},  {"s", GateKind::S},  {"x", GateKind::X},
          {"y", GateKind::Y},  {"z", GateKind::Z},  {"cx", GateKind::CX},
          {"cz", GateKind::CZ}};
      bool found = false;
      for (const auto& [name, kind] : kGates) {
        if (word == name) {
          Gate g{kind, 0, UINT32_MAX};
          ls >> g.q0;
          if (is_two_qubit(kind)) ls >> g.q1;
          c.ops.push_back(g);
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("unknown circuit op: " + word);
    }
    if (ls.fail()) throw std::invalid_argument("malformed circuit line: " + line);
  }
  c.validate();
  return c;
}

}  // namespace pcs

#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "sqsim/common.hpp"

namespace sqsim {

enum class GateKind { H, CZ, Diag };

/// One circuit gate. T is held internally as Diag(q, 0, r/8) with `from_t`
/// set so that serialization restores the `t` mnemonic.
struct Gate {
  GateKind kind = GateKind::H;
  std::size_t qubit_a = 0;   // H/Diag target, first CZ endpoint
  std::size_t qubit_b = 0;   // second CZ endpoint
  int p0 = 0, p1 = 0;        // Diag exponents in Z_r
  bool from_t = false;
  std::size_t position = 0;  // 1-based index in circuit order

  bool operator==(const Gate& o) const {
    return kind == o.kind && qubit_a == o.qubit_a && qubit_b == o.qubit_b && p0 == o.p0 &&
           p1 == o.p1 && from_t == o.from_t && position == o.position;
  }
};

struct Circuit {
  std::size_t n_qubits = 1;
  int modulus = 8;
  std::vector<Gate> gates;

  bool operator==(const Circuit& o) const {
    return n_qubits == o.n_qubits && modulus == o.modulus && gates == o.gates;
  }
};

inline void validate_circuit(const Circuit& c) {
  if (c.n_qubits == 0) throw ValidationError("circuit must have at least one qubit");
  if (c.modulus < 2 || c.modulus % 2 != 0) throw ValidationError("modulus must be even and >= 2");
  for (const Gate& g : c.gates) {
    if (g.qubit_a >= c.n_qubits) throw ValidationError("qubit index out of range");
    if (g.kind == GateKind::CZ) {
      if (g.qubit_b >= c.n_qubits) throw ValidationError("qubit index out of range");
      if (g.qubit_a == g.qubit_b) throw ValidationError("cz endpoints must be distinct");
    }
    if (g.kind == GateKind::Diag) {
      if (g.p0 < 0 || g.p0 >= c.modulus || g.p1 < 0 || g.p1 >= c.modulus)
        throw ValidationError("diag exponent outside [0, r)");
      if (g.from_t && c.modulus % 8 != 0)
        throw ValidationError("t gate requires modulus divisible by 8");
    }
  }
}

/// Per-qubit count of H gates (the segment-variable index range on each wire).
inline std::vector<std::size_t> hadamard_depths(const Circuit& c) {
  std::vector<std::size_t> depth(c.n_qubits, 0);
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::H) ++depth[g.qubit_a];
  return depth;
}

// `.sqc` format: directives `qubits N`, `modulus R` first, then gate lines
// `h q`, `t q`, `cz a b`, `diag q p0 p1`; `#` starts a comment.
inline Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Circuit c;
  bool have_qubits = false, have_modulus = false, seen_gate = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;

    auto read_qubit = [&](const char* what) {
      long q = -1;
      if (!(ls >> q) || q < 0) throw ParseError(std::string("bad ") + what, lineno);
      if (!have_qubits || static_cast<std::size_t>(q) >= c.n_qubits)
        throw ParseError("qubit " + std::to_string(q) + " out of range", lineno);
      return static_cast<std::size_t>(q);
    };

    if (tok == "qubits") {
      if (seen_gate) throw ParseError("directive after gates", lineno);
      long n = 0;
      if (!(ls >> n) || n <= 0) throw ParseError("bad qubits directive", lineno);
      c.n_qubits = static_cast<std::size_t>(n);
      have_qubits = true;
    } else if (tok == "modulus") {
      if (seen_gate) throw ParseError("directive after gates", lineno);
      long r = 0;
      if (!(ls >> r) || r < 2) throw ParseError("bad modulus directive", lineno);
      if (r % 2 != 0) throw ParseError("modulus must be even", lineno);
      c.modulus = static_cast<int>(r);
      have_modulus = true;
    } else if (tok == "h") {
      Gate g;
      g.kind = GateKind::H;
      g.qubit_a = read_qubit("h line");
      seen_gate = true;
      c.gates.push_back(g);
    } else if (tok == "t") {
      if (c.modulus % 8 != 0)
        throw ParseError("t gate requires modulus divisible by 8", lineno);
      Gate g;
      g.kind = GateKind::Diag;
      g.qubit_a = read_qubit("t line");
      g.p0 = 0;
      g.p1 = c.modulus / 8;
      g.from_t = true;
      seen_gate = true;
      c.gates.push_back(g);
    } else if (tok == "cz") {
      Gate g;
      g.kind = GateKind::CZ;
      g.qubit_a = read_qubit("cz line");
      g.qubit_b = read_qubit("cz line");
      if (g.qubit_a == g.qubit_b) throw ParseError("cz endpoints must be distinct", lineno);
      seen_gate = true;
      c.gates.push_back(g);
    } else if (tok == "diag") {
      Gate g;
      g.kind = GateKind::Diag;
      g.qubit_a = read_qubit("diag line");
      long p0 = -1, p1 = -1;
      if (!(ls >> p0 >> p1)) throw ParseError("bad diag line", lineno);
      if (p0 < 0 || p0 >= c.modulus || p1 < 0 || p1 >= c.modulus)
        throw ParseError("diag exponent outside [0, r)", lineno);
      g.p0 = static_cast<int>(p0);
      g.p1 = static_cast<int>(p1);
      seen_gate = true;
      c.gates.push_back(g);
    } else {
      throw ParseError("unknown token '" + tok + "'", lineno);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
  }
  if (!have_qubits) throw ParseError("missing qubits directive");
  (void)have_modulus;
  for (std::size_t i = 0; i < c.gates.size(); ++i) c.gates[i].position = i + 1;
  validate_circuit(c);
  return c;
}

inline std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.n_qubits << "\n";
  out << "modulus " << c.modulus << "\n";
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::H:
        out << "h " << g.qubit_a << "\n";
        break;
      case GateKind::CZ:
        out << "cz " << g.qubit_a << " " << g.qubit_b << "\n";
        break;
      case GateKind::Diag:
        if (g.from_t)
          out << "t " << g.qubit_a << "\n";
        else
          out << "diag " << g.qubit_a << " " << g.p0 << " " << g.p1 << "\n";
        break;
    }
  }
  return out.str();
}

/// Convenience builders used by generators and tests.
inline Gate make_h(std::size_t q) { return Gate{GateKind::H, q, 0, 0, 0, false, 0}; }
inline Gate make_cz(std::size_t a, std::size_t b) { return Gate{GateKind::CZ, a, b, 0, 0, false, 0}; }
inline Gate make_t(std::size_t q, int r) { return Gate{GateKind::Diag, q, 0, 0, r / 8, true, 0}; }
inline Gate make_diag(std::size_t q, int p0, int p1) {
  return Gate{GateKind::Diag, q, 0, p0, p1, false, 0};
}

inline void renumber_positions(Circuit& c) {
  for (std::size_t i = 0; i < c.gates.size(); ++i) c.gates[i].position = i + 1;
}

}  // namespace sqsim

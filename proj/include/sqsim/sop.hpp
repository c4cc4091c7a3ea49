#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sqsim/circuit.hpp"
#include "sqsim/graph.hpp"

namespace sqsim {

/// A path variable: segment `segment` on qubit wire `wire`.
struct VarId {
  std::size_t wire = 0;
  std::size_t segment = 0;

  std::string name() const {
    return "q" + std::to_string(wire) + "s" + std::to_string(segment);
  }
  bool operator==(const VarId& o) const { return wire == o.wire && segment == o.segment; }
  bool operator<(const VarId& o) const {
    return wire != o.wire ? wire < o.wire : segment < o.segment;
  }
};

enum class SopStatus { Consistent, Inconsistent };

/// Pinned quadratic sum-of-powers: f(x) = c + sum b_v x_v + eta * sum_{E} x_u x_v (mod r),
/// amplitude (1/sqrt(2)^m_H) * sum_x omega_r^f(x). Free variables are indexed
/// wire-major, segment-ascending; `graph` is the variable graph on those indices.
struct SopInstance {
  int r = 8;
  int eta = 4;
  std::vector<VarId> vars;
  Graph graph;
  std::vector<int> b;
  int c = 0;
  std::size_t hadamard_count = 0;
  SopStatus status = SopStatus::Consistent;

  std::size_t num_vars() const { return vars.size(); }
};

inline std::vector<bool> parse_bits(const std::string& s, std::size_t n, const char* what) {
  if (s.size() != n)
    throw ValidationError(std::string(what) + " bit string must have length " + std::to_string(n));
  std::vector<bool> bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw ValidationError(std::string(what) + " bit string must be over {0,1}");
    bits[i] = (s[i] == '1');
  }
  return bits;
}

inline SopInstance extract_sop(const Circuit& c, const std::vector<bool>& in_bits,
                               const std::vector<bool>& out_bits) {
  validate_circuit(c);
  if (in_bits.size() != c.n_qubits || out_bits.size() != c.n_qubits)
    throw ValidationError("pin bit strings must have length n_qubits");

  const int r = c.modulus;
  const int eta = r / 2;
  const auto depth = hadamard_depths(c);

  SopInstance s;
  s.r = r;
  s.eta = eta;

  // Free variables: segments 1..k_a-1 on each wire; segment 0 is pinned to the
  // input, segment k_a to the output. A wire with k_a = 0 has one segment
  // pinned on both sides.
  std::map<VarId, std::size_t> index;
  for (std::size_t a = 0; a < c.n_qubits; ++a)
    for (std::size_t j = 1; j + 1 <= depth[a]; ++j) {
      VarId v{a, j};
      index.emplace(v, s.vars.size());
      s.vars.push_back(v);
    }
  s.graph = Graph(s.vars.size());
  s.b.assign(s.vars.size(), 0);

  bool inconsistent = false;
  for (std::size_t a = 0; a < c.n_qubits; ++a)
    if (depth[a] == 0 && in_bits[a] != out_bits[a]) inconsistent = true;

  // Pin value of segment (a, j), or nullopt when the segment is free.
  auto pin = [&](std::size_t a, std::size_t j) -> std::optional<int> {
    if (j == 0) return in_bits[a] ? 1 : 0;
    if (j == depth[a]) return out_bits[a] ? 1 : 0;
    return std::nullopt;
  };
  auto var_index = [&](std::size_t a, std::size_t j) { return index.at(VarId{a, j}); };

  auto add_b = [&](std::size_t idx, long long delta) {
    s.b[idx] = static_cast<int>((((s.b[idx] + delta) % r) + r) % r);
  };
  auto add_c = [&](long long delta) { s.c = static_cast<int>((((s.c + delta) % r) + r) % r); };

  // Cross-term eta * x_s * x_t: folds pinned endpoints into c or b, toggles
  // edge parity for free pairs (2*eta = 0 mod r, so only parity survives).
  std::map<std::pair<std::size_t, std::size_t>, int> edge_parity;
  auto cross = [&](std::size_t a1, std::size_t j1, std::size_t a2, std::size_t j2) {
    auto p1 = pin(a1, j1), p2 = pin(a2, j2);
    if (p1 && p2) {
      add_c(static_cast<long long>(eta) * (*p1) * (*p2));
    } else if (p1) {
      add_b(var_index(a2, j2), static_cast<long long>(eta) * (*p1));
    } else if (p2) {
      add_b(var_index(a1, j1), static_cast<long long>(eta) * (*p2));
    } else {
      std::size_t u = var_index(a1, j1), v = var_index(a2, j2);
      if (u > v) std::swap(u, v);
      edge_parity[{u, v}] ^= 1;
    }
  };

  std::vector<std::size_t> seg(c.n_qubits, 0);  // current segment per wire
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::H: {
        std::size_t a = g.qubit_a;
        cross(a, seg[a], a, seg[a] + 1);
        ++seg[a];
        ++s.hadamard_count;
        break;
      }
      case GateKind::CZ:
        cross(g.qubit_a, seg[g.qubit_a], g.qubit_b, seg[g.qubit_b]);
        break;
      case GateKind::Diag: {
        // exponent p0 + (p1 - p0) * x_s
        std::size_t a = g.qubit_a;
        add_c(g.p0);
        auto p = pin(a, seg[a]);
        long long delta = g.p1 - g.p0;
        if (p)
          add_c(delta * (*p));
        else
          add_b(var_index(a, seg[a]), delta);
        break;
      }
    }
  }

  for (const auto& [e, parity] : edge_parity)
    if (parity) s.graph.add_edge(e.first, e.second);

  if (inconsistent) s.status = SopStatus::Inconsistent;
  return s;
}

inline SopInstance extract_sop(const Circuit& c, const std::string& in_bits,
                               const std::string& out_bits) {
  return extract_sop(c, parse_bits(in_bits, c.n_qubits, "input"),
                     parse_bits(out_bits, c.n_qubits, "output"));
}

/// f(x) mod r for an explicit assignment over the free variables.
inline int evaluate_f(const SopInstance& s, const std::vector<bool>& x) {
  if (s.status != SopStatus::Consistent) throw ValidationError("instance is inconsistent");
  if (x.size() != s.num_vars()) throw ValidationError("assignment length mismatch");
  long long f = s.c;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (x[v]) f += s.b[v];
  for (auto [u, v] : s.graph.edges())
    if (x[u] && x[v]) f += s.eta;
  return static_cast<int>(((f % s.r) + s.r) % s.r);
}

inline std::string sop_to_dot(const SopInstance& s) {
  std::ostringstream out;
  out << "graph sop {\n";
  if (s.status == SopStatus::Inconsistent) out << "  // INCONSISTENT: amplitude is 0\n";
  out << "  // r=" << s.r << " eta=" << s.eta << " c=" << s.c
      << " hadamards=" << s.hadamard_count << "\n";
  for (std::size_t v = 0; v < s.num_vars(); ++v) {
    out << "  " << s.vars[v].name();
    if (s.b[v] != 0) out << " [label=\"" << s.vars[v].name() << " b=" << s.b[v] << "\"]";
    out << ";\n";
  }
  for (auto [u, v] : s.graph.edges())
    out << "  " << s.vars[u].name() << " -- " << s.vars[v].name() << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace sqsim

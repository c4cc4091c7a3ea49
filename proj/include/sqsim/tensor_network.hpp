#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqsim/circuit.hpp"
#include "sqsim/graph.hpp"

namespace sqsim {

/// A bond index of the tensor network: the wire segment between two gates.
struct Bond {
  std::size_t gate_a = 0;  // earlier gate (0-based position)
  std::size_t gate_b = 0;  // later gate
  std::size_t wire = 0;
};

/// Tensor-network graph N_C: one vertex per gate, one bond per internal wire
/// segment. Open boundary indices carry no bond. Parallel bonds between the
/// same gate pair stay distinct in `bonds` but collapse in the simple graph.
struct TensorNetwork {
  std::size_t num_gates = 0;
  std::vector<Bond> bonds;

  Graph simple_graph() const {
    Graph g(num_gates);
    for (const Bond& b : bonds)
      if (!g.has_edge(b.gate_a, b.gate_b)) g.add_edge(b.gate_a, b.gate_b);
    return g;
  }
};

inline TensorNetwork tensor_network_graph(const Circuit& c) {
  validate_circuit(c);
  TensorNetwork tn;
  tn.num_gates = c.gates.size();
  std::vector<std::optional<std::size_t>> last(c.n_qubits);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    auto touch = [&](std::size_t wire) {
      if (last[wire]) tn.bonds.push_back(Bond{*last[wire], i, wire});
      last[wire] = i;
    };
    touch(g.qubit_a);
    if (g.kind == GateKind::CZ) touch(g.qubit_b);
  }
  return tn;
}

/// Line graph L(N_C): vertices are the bonds, adjacency is co-occurrence on a
/// common gate tensor.
inline Graph line_graph(const TensorNetwork& tn) {
  Graph g(tn.bonds.size());
  for (std::size_t i = 0; i < tn.bonds.size(); ++i)
    for (std::size_t j = i + 1; j < tn.bonds.size(); ++j) {
      const Bond& a = tn.bonds[i];
      const Bond& b = tn.bonds[j];
      if (a.gate_a == b.gate_a || a.gate_a == b.gate_b || a.gate_b == b.gate_a ||
          a.gate_b == b.gate_b)
        g.add_edge(i, j);
    }
  return g;
}

}  // namespace sqsim

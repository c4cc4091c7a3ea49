#pragma once

#include <random>
#include <string>

#include "sqsim/circuit.hpp"
#include "sqsim/graph.hpp"

namespace sqsim::testutil {

inline const char* kRunningExampleText =
    "qubits 3\n"
    "modulus 8\n"
    "h 0\n"
    "h 1\n"
    "h 2\n"
    "cz 0 1\n"
    "cz 1 2\n"
    "t 1\n"
    "h 0\n"
    "h 1\n"
    "h 2\n";

inline Circuit running_example() { return parse_circuit(kRunningExampleText); }

/// Random circuit over {H, T, CZ, Diag} with r = 8.
inline Circuit random_circuit(std::mt19937& rng, std::size_t max_qubits, std::size_t max_gates,
                              bool with_diag = true) {
  std::uniform_int_distribution<std::size_t> nq(1, max_qubits);
  Circuit c;
  c.n_qubits = nq(rng);
  c.modulus = 8;
  std::uniform_int_distribution<std::size_t> ng(0, max_gates);
  std::uniform_int_distribution<std::size_t> q(0, c.n_qubits - 1);
  std::uniform_int_distribution<int> kind(0, with_diag ? 3 : 2);
  std::uniform_int_distribution<int> expo(0, 7);
  std::size_t m = ng(rng);
  for (std::size_t i = 0; i < m; ++i) {
    switch (kind(rng)) {
      case 0:
        c.gates.push_back(make_h(q(rng)));
        break;
      case 1:
        c.gates.push_back(make_t(q(rng), c.modulus));
        break;
      case 2: {
        if (c.n_qubits < 2) {
          c.gates.push_back(make_h(q(rng)));
          break;
        }
        std::size_t a = q(rng), b = q(rng);
        while (b == a) b = q(rng);
        c.gates.push_back(make_cz(a, b));
        break;
      }
      default:
        c.gates.push_back(make_diag(q(rng), expo(rng), expo(rng)));
        break;
    }
  }
  renumber_positions(c);
  return c;
}

inline std::string random_bits(std::mt19937& rng, std::size_t n) {
  std::string s(n, '0');
  std::bernoulli_distribution coin(0.5);
  for (auto& ch : s)
    if (coin(rng)) ch = '1';
  return s;
}

/// Erdos-Renyi style random simple graph.
inline Graph random_graph(std::mt19937& rng, std::size_t max_n, double p = 0.4) {
  std::uniform_int_distribution<std::size_t> nd(1, max_n);
  std::size_t n = nd(rng);
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n > 2) g.add_edge(n - 1, 0);
  return g;
}

}  // namespace sqsim::testutil

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sqsim/circuit.hpp"
#include "sqsim/graph.hpp"
#include "sqsim/rank_decomp.hpp"

namespace sqsim {

/// H-layer, one CZ per edge, H-layer: pinned all-zeros, the SOP variable
/// graph of the result is exactly `g` (one free variable per qubit).
inline Circuit circuit_from_graph(const Graph& g) {
  Circuit c;
  c.n_qubits = g.size() == 0 ? 1 : g.size();
  c.modulus = 8;
  for (std::size_t q = 0; q < g.size(); ++q) c.gates.push_back(make_h(q));
  for (auto [u, v] : g.edges()) c.gates.push_back(make_cz(u, v));
  for (std::size_t q = 0; q < g.size(); ++q) c.gates.push_back(make_h(q));
  renumber_positions(c);
  return c;
}

/// Complete binary tree B_h, vertices numbered breadth-first from the root.
inline Graph complete_binary_tree(std::size_t h) {
  const std::size_t n = (std::size_t{1} << (h + 1)) - 1;
  Graph g(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (2 * v + 1 < n) g.add_edge(v, 2 * v + 1);
    if (2 * v + 2 < n) g.add_edge(v, 2 * v + 2);
  }
  return g;
}

/// Lexicographic blow-up g[K_t]: vertex v becomes clique {v*t .. v*t+t-1},
/// edges become complete bipartite connections.
inline Graph blowup(const Graph& g, std::size_t t) {
  if (t < 1) throw ValidationError("blowup factor must be >= 1");
  Graph out(g.size() * t);
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = i + 1; j < t; ++j) out.add_edge(v * t + i, v * t + j);
  for (auto [u, v] : g.edges())
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) out.add_edge(u * t + i, v * t + j);
  return out;
}

namespace detail {

/// Balanced subcubic tree over the clique of original vertex v; returns the
/// node attached upward.
inline std::size_t clique_expansion(RankDecomposition& d, std::size_t v, std::size_t t,
                                    std::size_t lo, std::size_t hi, int& counter) {
  if (hi - lo == 1)
    return d.add_node("v" + std::to_string(v * t + lo), v * t + lo);
  std::size_t mid = lo + (hi - lo) / 2;
  std::size_t node = d.add_node("c" + std::to_string(counter++));
  d.tree_edges.emplace_back(node, clique_expansion(d, v, t, lo, mid, counter));
  d.tree_edges.emplace_back(node, clique_expansion(d, v, t, mid, hi, counter));
  return node;
}

/// Width-1 shaped decomposition of the B_h skeleton with clique leaves
/// expanded; cuts inherited from B_h have rank <= 2, clique splits rank <= 1.
inline std::size_t tree_witness(RankDecomposition& d, std::size_t v, std::size_t n_orig,
                                std::size_t t, int& counter) {
  std::size_t self = clique_expansion(d, v, t, 0, t, counter);
  std::size_t l = 2 * v + 1, r = 2 * v + 2;
  if (l >= n_orig) return self;  // leaf of B_h
  std::size_t j1 = d.add_node("j" + std::to_string(counter++));
  std::size_t j2 = d.add_node("j" + std::to_string(counter++));
  d.tree_edges.emplace_back(j1, self);
  d.tree_edges.emplace_back(j1, j2);
  d.tree_edges.emplace_back(j2, tree_witness(d, l, n_orig, t, counter));
  d.tree_edges.emplace_back(j2, tree_witness(d, r, n_orig, t, counter));
  return j1;
}

}  // namespace detail

struct FamilyInstance {
  std::size_t h = 1, t = 1;
  Graph variable_graph;          // blowup(B_h, t)
  Circuit circuit;               // realizes the variable graph
  RankDecomposition witness;     // width <= 2 by construction
};

/// Circuit family whose SOP variable graph is B_h[K_t]: constant witness
/// width while treewidth grows with t and linear layouts grow with h.
inline FamilyInstance separating_family(std::size_t h, std::size_t t) {
  if (h < 1 || t < 1) throw ValidationError("separating_family requires h >= 1, t >= 1");
  FamilyInstance fam;
  fam.h = h;
  fam.t = t;
  Graph base = complete_binary_tree(h);
  fam.variable_graph = blowup(base, t);
  fam.circuit = circuit_from_graph(fam.variable_graph);
  int counter = 0;
  std::size_t top = detail::tree_witness(fam.witness, 0, base.size(), t, counter);
  // The recursion returns a single dangling root of degree <= 2; nothing to
  // attach, the tree is already complete.
  (void)top;
  return fam;
}

}  // namespace sqsim

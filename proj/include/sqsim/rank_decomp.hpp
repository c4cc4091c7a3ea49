#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sqsim/common.hpp"
#include "sqsim/graph.hpp"

namespace sqsim {

/// Subcubic leaf-labeled tree. Node ids are arbitrary tokens; leaves carry
/// graph vertex indices.
struct RankDecomposition {
  std::vector<std::string> node_names;
  std::vector<std::optional<std::size_t>> leaf_vertex;  // per node
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

  std::size_t num_nodes() const { return node_names.size(); }

  std::size_t add_node(std::string name, std::optional<std::size_t> vertex = std::nullopt) {
    node_names.push_back(std::move(name));
    leaf_vertex.push_back(vertex);
    return node_names.size() - 1;
  }

  std::size_t num_leaves() const {
    std::size_t k = 0;
    for (const auto& lv : leaf_vertex)
      if (lv) ++k;
    return k;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(num_nodes(), 0);
    for (auto [a, b] : tree_edges) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }

  bool operator==(const RankDecomposition& o) const {
    return node_names == o.node_names && leaf_vertex == o.leaf_vertex &&
           tree_edges == o.tree_edges;
  }
};

// `.rdec` format: `leaf <nodeId> <vertexIndex>` and `edge <nodeIdA> <nodeIdB>`
// lines, `#` comments. Node indices follow first appearance.
inline RankDecomposition parse_rdec(const std::string& text) {
  RankDecomposition d;
  std::map<std::string, std::size_t> ids;
  std::map<std::size_t, int> seen_vertex;
  auto node_of = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    std::size_t id = d.add_node(name);
    ids.emplace(name, id);
    return id;
  };
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "leaf") {
      std::string name;
      long v = -1;
      if (!(ls >> name >> v) || v < 0) throw ParseError("bad leaf line", lineno);
      std::size_t id = node_of(name);
      if (d.leaf_vertex[id]) throw ParseError("node '" + name + "' declared leaf twice", lineno);
      if (seen_vertex.count(static_cast<std::size_t>(v)))
        throw ParseError("duplicate leaf label " + std::to_string(v), lineno);
      seen_vertex[static_cast<std::size_t>(v)] = 1;
      d.leaf_vertex[id] = static_cast<std::size_t>(v);
    } else if (tok == "edge") {
      std::string a, b;
      if (!(ls >> a >> b)) throw ParseError("bad edge line", lineno);
      if (a == b) throw ParseError("self-loop tree edge", lineno);
      d.tree_edges.emplace_back(node_of(a), node_of(b));
    } else {
      throw ParseError("unknown token '" + tok + "'", lineno);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
  }
  return d;
}

inline std::string serialize_rdec(const RankDecomposition& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.num_nodes(); ++i)
    if (d.leaf_vertex[i]) out << "leaf " << d.node_names[i] << " " << *d.leaf_vertex[i] << "\n";
  for (auto [a, b] : d.tree_edges)
    out << "edge " << d.node_names[a] << " " << d.node_names[b] << "\n";
  return out.str();
}

/// Confirms tree shape, degree bound, and the leaf bijection onto V(g).
/// Throws ValidationError naming the offending node.
inline void validate_decomposition(const Graph& g, const RankDecomposition& d) {
  const std::size_t m = d.num_nodes();
  if (m == 0) {
    if (g.size() != 0) throw ValidationError("LeafMismatch: empty decomposition");
    return;
  }
  if (d.tree_edges.size() != m - 1)
    throw ValidationError("NotATree: " + std::to_string(d.tree_edges.size()) + " edges on " +
                          std::to_string(m) + " nodes");
  std::vector<std::vector<std::size_t>> adj(m);
  for (auto [a, b] : d.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(m, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto t = stack.back();
    stack.pop_back();
    for (auto u : adj[t])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
  }
  if (reached != m) throw ValidationError("NotATree: disconnected at node " + d.node_names[0]);
  auto deg = d.degrees();
  std::vector<char> vertex_seen(g.size(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (deg[i] > 3)
      throw ValidationError("DegreeExceeded: node " + d.node_names[i] + " has degree " +
                            std::to_string(deg[i]));
    const bool is_leaf_node = deg[i] <= 1;
    if (is_leaf_node != d.leaf_vertex[i].has_value())
      throw ValidationError("LeafMismatch: node " + d.node_names[i] +
                            (is_leaf_node ? " has no vertex label" : " is internal but labeled"));
    if (d.leaf_vertex[i]) {
      std::size_t v = *d.leaf_vertex[i];
      if (v >= g.size())
        throw ValidationError("LeafMismatch: node " + d.node_names[i] + " labels vertex " +
                              std::to_string(v) + " out of range");
      if (vertex_seen[v])
        throw ValidationError("LeafMismatch: vertex " + std::to_string(v) + " labeled twice");
      vertex_seen[v] = 1;
    }
  }
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!vertex_seen[v])
      throw ValidationError("LeafMismatch: vertex " + std::to_string(v) + " has no leaf");
}

/// Vertex set on the far side of tree edge `edge_index`, seen from node `from`.
inline BitVec leaves_beyond(const RankDecomposition& d, std::size_t n_vertices,
                            std::size_t edge_index, bool from_second) {
  const std::size_t m = d.num_nodes();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(m);  // (nbr, edge id)
  for (std::size_t e = 0; e < d.tree_edges.size(); ++e) {
    auto [a, b] = d.tree_edges[e];
    adj[a].emplace_back(b, e);
    adj[b].emplace_back(a, e);
  }
  std::size_t start =
      from_second ? d.tree_edges[edge_index].first : d.tree_edges[edge_index].second;
  BitVec mask(n_vertices);
  std::vector<char> seen(m, 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    auto t = stack.back();
    stack.pop_back();
    if (d.leaf_vertex[t]) mask.set(*d.leaf_vertex[t]);
    for (auto [u, e] : adj[t])
      if (e != edge_index && !seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  return mask;
}

/// Max cut-rank over the bipartitions induced by the tree edges.
inline std::size_t decomposition_width(const Graph& g, const RankDecomposition& d) {
  validate_decomposition(g, d);
  std::size_t width = 0;
  for (std::size_t e = 0; e < d.tree_edges.size(); ++e)
    width = std::max(width, cut_rank(g, leaves_beyond(d, g.size(), e, false)));
  return width;
}

/// Rooted binary form used by the DP. A node with `right == -1` and
/// `left != -1` is a pass-through (inherited from a degree-2 node).
struct RootedNode {
  int left = -1;
  int right = -1;
  int leaf_vertex = -1;
  BitVec X;
};

struct RootedDecomposition {
  std::vector<RootedNode> nodes;
  std::size_t root = 0;
  std::size_t n_vertices = 0;

  bool empty() const { return nodes.empty(); }
};

/// Roots a decomposition by subdividing the lexicographically first tree edge
/// (by normalized node-index pair) and computing the X sets bottom-up.
inline RootedDecomposition root_decomposition(const RankDecomposition& d) {
  RootedDecomposition rd;
  const std::size_t m = d.num_nodes();
  if (m == 0) throw ValidationError("cannot root an empty decomposition");
  rd.n_vertices = d.num_leaves();
  if (m == 1) {
    if (!d.leaf_vertex[0]) throw ValidationError("single node must be a leaf");
    RootedNode n;
    n.leaf_vertex = static_cast<int>(*d.leaf_vertex[0]);
    n.X = BitVec(rd.n_vertices);
    n.X.set(*d.leaf_vertex[0]);
    rd.nodes.push_back(std::move(n));
    rd.root = 0;
    return rd;
  }
  // Pick the subdivision edge.
  std::size_t best_e = 0;
  auto norm = [&](std::size_t e) {
    auto [a, b] = d.tree_edges[e];
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  for (std::size_t e = 1; e < d.tree_edges.size(); ++e)
    if (norm(e) < norm(best_e)) best_e = e;

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(m);
  for (std::size_t e = 0; e < d.tree_edges.size(); ++e) {
    auto [a, b] = d.tree_edges[e];
    adj[a].emplace_back(b, e);
    adj[b].emplace_back(a, e);
  }

  rd.nodes.resize(m + 1);
  const std::size_t root = m;  // the new subdivision node
  rd.root = root;

  // Orient away from the root; children fill left slot first.
  auto attach = [&](std::size_t parent, std::size_t child) {
    if (rd.nodes[parent].left < 0)
      rd.nodes[parent].left = static_cast<int>(child);
    else
      rd.nodes[parent].right = static_cast<int>(child);
  };
  auto [ra, rb] = d.tree_edges[best_e];
  attach(root, ra);
  attach(root, rb);
  // Iterative DFS from the two root children.
  std::vector<std::pair<std::size_t, long>> stack;  // (node, incoming edge or -1)
  stack.emplace_back(ra, static_cast<long>(best_e));
  stack.emplace_back(rb, static_cast<long>(best_e));
  std::vector<char> seen(m, 0);
  seen[ra] = seen[rb] = 1;
  while (!stack.empty()) {
    auto [u, in_e] = stack.back();
    stack.pop_back();
    if (d.leaf_vertex[u]) rd.nodes[u].leaf_vertex = static_cast<int>(*d.leaf_vertex[u]);
    for (auto [v, e] : adj[u]) {
      if (static_cast<long>(e) == in_e || seen[v]) continue;
      seen[v] = 1;
      attach(u, v);
      stack.emplace_back(v, static_cast<long>(e));
    }
  }
  // X sets bottom-up (post-order via explicit stack).
  std::vector<std::size_t> order;
  order.reserve(m + 1);
  {
    std::vector<std::size_t> st{root};
    while (!st.empty()) {
      auto u = st.back();
      st.pop_back();
      order.push_back(u);
      if (rd.nodes[u].left >= 0) st.push_back(static_cast<std::size_t>(rd.nodes[u].left));
      if (rd.nodes[u].right >= 0) st.push_back(static_cast<std::size_t>(rd.nodes[u].right));
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    RootedNode& n = rd.nodes[*it];
    n.X = BitVec(rd.n_vertices);
    if (n.leaf_vertex >= 0) n.X.set(static_cast<std::size_t>(n.leaf_vertex));
    if (n.left >= 0) n.X |= rd.nodes[static_cast<std::size_t>(n.left)].X;
    if (n.right >= 0) n.X |= rd.nodes[static_cast<std::size_t>(n.right)].X;
  }
  return rd;
}

/// Caterpillar decomposition whose leaf sequence follows `order`; its width is
/// the linear-layout width of the order.
inline RankDecomposition caterpillar_from_order(const Graph& g,
                                                const std::vector<std::size_t>& order) {
  const std::size_t n = g.size();
  std::vector<char> seen(n, 0);
  if (order.size() != n) throw ValidationError("order is not a permutation");
  for (auto v : order) {
    if (v >= n || seen[v]) throw ValidationError("order is not a permutation");
    seen[v] = 1;
  }
  RankDecomposition d;
  if (n == 0) return d;
  auto leaf_name = [&](std::size_t i) { return "v" + std::to_string(order[i]); };
  if (n == 1) {
    d.add_node(leaf_name(0), order[0]);
    return d;
  }
  std::vector<std::size_t> leaves;
  for (std::size_t i = 0; i < n; ++i) leaves.push_back(d.add_node(leaf_name(i), order[i]));
  if (n == 2) {
    d.tree_edges.emplace_back(leaves[0], leaves[1]);
    return d;
  }
  std::vector<std::size_t> spine;
  for (std::size_t i = 0; i + 2 < n; ++i) spine.push_back(d.add_node("s" + std::to_string(i)));
  d.tree_edges.emplace_back(leaves[0], spine[0]);
  d.tree_edges.emplace_back(leaves[1], spine[0]);
  for (std::size_t i = 0; i + 1 < spine.size(); ++i) {
    d.tree_edges.emplace_back(spine[i], spine[i + 1]);
    d.tree_edges.emplace_back(leaves[i + 2], spine[i + 1]);
  }
  d.tree_edges.emplace_back(leaves[n - 1], spine.back());
  return d;
}

/// Width of a linear layout: max prefix cut-rank.
inline std::size_t layout_width(const Graph& g, const std::vector<std::size_t>& order) {
  BitVec prefix(g.size());
  std::size_t w = 0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    prefix.set(order[i]);
    w = std::max(w, cut_rank(g, prefix));
  }
  return w;
}

inline constexpr std::size_t kRankwidthExactCap = 8;

/// Exact linear rank-width by exhaustive order search; capped at n=8.
inline std::size_t linear_rankwidth_exact(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kRankwidthExactCap)
    throw ResourceCapError("linear_rankwidth_exact capped at n=" +
                           std::to_string(kRankwidthExactCap));
  if (n <= 1) return 0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t best = n;
  do {
    best = std::min(best, layout_width(g, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

namespace detail {

inline RankDecomposition build_from_splits(const Graph& g,
                                           const std::map<BitVec, BitVec>& split_of,
                                           const BitVec& top1, const BitVec& top2) {
  RankDecomposition d;
  int counter = 0;
  // Recursive subtree construction; returns the node attached upward.
  auto build = [&](auto&& self, const BitVec& s) -> std::size_t {
    if (s.count() == 1)
      return d.add_node("v" + std::to_string(s.find_first()), s.find_first());
    BitVec s1 = split_of.at(s);
    BitVec s2 = s - s1;
    std::size_t node = d.add_node("i" + std::to_string(counter++));
    d.tree_edges.emplace_back(node, self(self, s1));
    d.tree_edges.emplace_back(node, self(self, s2));
    return node;
  };
  std::size_t a = build(build, top1);
  std::size_t b = build(build, top2);
  d.tree_edges.emplace_back(a, b);
  (void)g;
  return d;
}

}  // namespace detail

/// Exact rank-width with a witness decomposition, by dynamic programming over
/// vertex subsets (all subcubic leaf-labeled trees are covered by recursive
/// bipartitions). Capped at n=8.
inline std::pair<std::size_t, RankDecomposition> rankwidth_exact(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kRankwidthExactCap)
    throw ResourceCapError("rankwidth_exact capped at n=" + std::to_string(kRankwidthExactCap));
  RankDecomposition trivial;
  if (n == 0) return {0, trivial};
  if (n == 1) {
    trivial.add_node("v0", 0);
    return {0, trivial};
  }
  const uint32_t full = (1u << n) - 1u;
  auto mask_of = [&](uint32_t bits) {
    BitVec b(n);
    for (std::size_t i = 0; i < n; ++i)
      if (bits >> i & 1u) b.set(i);
    return b;
  };
  std::vector<std::size_t> rho(full + 1);
  for (uint32_t s = 0; s <= full; ++s) rho[s] = cut_rank(g, mask_of(s));
  // w[s]: best width counting only edges strictly inside the subtree over s.
  std::vector<std::size_t> w(full + 1, 0);
  std::vector<uint32_t> split(full + 1, 0);
  for (uint32_t s = 1; s <= full; ++s) {
    if ((s & (s - 1)) == 0) continue;  // singleton
    std::size_t best = n + 1;
    uint32_t best_s1 = 0;
    // Enumerate proper sub-splits; iterate submasks.
    for (uint32_t s1 = (s - 1) & s; s1 != 0; s1 = (s1 - 1) & s) {
      uint32_t s2 = s & ~s1;
      if (s1 > s2) continue;  // unordered split
      std::size_t cand = std::max({rho[s1], rho[s2], w[s1], w[s2]});
      if (cand < best) {
        best = cand;
        best_s1 = s1;
      }
    }
    w[s] = best;
    split[s] = best_s1;
  }
  // Root edge: best top-level bipartition.
  std::size_t best = n + 1;
  uint32_t best_s1 = 0;
  for (uint32_t s1 = 1; s1 < full; ++s1) {
    uint32_t s2 = full & ~s1;
    if (s1 > s2) continue;
    std::size_t cand = std::max({rho[s1], w[s1], w[s2]});
    if (cand < best) {
      best = cand;
      best_s1 = s1;
    }
  }
  std::map<BitVec, BitVec> split_of;
  for (uint32_t s = 1; s <= full; ++s)
    if ((s & (s - 1)) != 0) split_of[mask_of(s)] = mask_of(split[s]);
  RankDecomposition witness =
      detail::build_from_splits(g, split_of, mask_of(best_s1), mask_of(full & ~best_s1));
  return {best, witness};
}

/// Heuristic decomposition: recursive balanced bipartition, each split refined
/// by greedy swaps that reduce the larger of the two cut ranks. Deterministic.
inline RankDecomposition decompose_greedy_bisection(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw ValidationError("empty graph");
  RankDecomposition d;
  if (n == 1) {
    d.add_node("v0", 0);
    return d;
  }
  int counter = 0;
  auto cost = [&](const std::vector<std::size_t>& part, const BitVec& other_as_mask) {
    (void)other_as_mask;
    BitVec m(n);
    for (auto v : part) m.set(v);
    return cut_rank(g, m);
  };
  auto split_set = [&](const std::vector<std::size_t>& s, std::vector<std::size_t>& a,
                       std::vector<std::size_t>& b) {
    a.assign(s.begin(), s.begin() + static_cast<long>(s.size() / 2));
    b.assign(s.begin() + static_cast<long>(s.size() / 2), s.end());
    BitVec dummy(n);
    std::size_t cur = std::max(cost(a, dummy), cost(b, dummy));
    bool improved = true;
    while (improved && cur > 0) {
      improved = false;
      for (std::size_t i = 0; i < a.size() && !improved; ++i)
        for (std::size_t j = 0; j < b.size() && !improved; ++j) {
          std::swap(a[i], b[j]);
          std::size_t cand = std::max(cost(a, dummy), cost(b, dummy));
          if (cand < cur) {
            cur = cand;
            improved = true;
          } else {
            std::swap(a[i], b[j]);
          }
        }
    }
  };
  auto build = [&](auto&& self, const std::vector<std::size_t>& s) -> std::size_t {
    if (s.size() == 1) return d.add_node("v" + std::to_string(s[0]), s[0]);
    std::vector<std::size_t> a, b;
    split_set(s, a, b);
    std::size_t node = d.add_node("i" + std::to_string(counter++));
    d.tree_edges.emplace_back(node, self(self, a));
    d.tree_edges.emplace_back(node, self(self, b));
    return node;
  };
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> a, b;
  split_set(all, a, b);
  std::size_t ra = build(build, a);
  std::size_t rb = build(build, b);
  d.tree_edges.emplace_back(ra, rb);
  return d;
}

}  // namespace sqsim

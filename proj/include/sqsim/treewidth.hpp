#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "sqsim/common.hpp"
#include "sqsim/graph.hpp"

namespace sqsim {

struct TreeDecomposition {
  std::vector<BitVec> bags;  // vertex masks over V
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.count());
    return w == 0 ? 0 : w - 1;
  }
};

/// Checks the three tree-decomposition conditions: vertex cover, edge cover,
/// connected subtrees. Also checks the bag tree is a tree.
inline bool valid_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  const std::size_t n = g.size();
  const std::size_t m = td.bags.size();
  if (m == 0) return n == 0;
  if (td.edges.size() != m - 1) return false;
  // Tree connectivity.
  std::vector<std::vector<std::size_t>> adj(m);
  for (auto [a, b] : td.edges) {
    if (a >= m || b >= m) return false;
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
  if (reached != m) return false;

  BitVec covered(n);
  for (const auto& b : td.bags) covered |= b;
  if (covered.count() != n) return false;
  for (auto [u, v] : g.edges()) {
    bool ok = false;
    for (const auto& b : td.bags)
      if (b.test(u) && b.test(v)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  // Connected subtree per vertex.
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> holding;
    for (std::size_t t = 0; t < m; ++t)
      if (td.bags[t].test(v)) holding.push_back(t);
    if (holding.empty()) return false;
    std::vector<char> hv(m, 0);
    for (auto t : holding) hv[t] = 1;
    std::vector<char> vis(m, 0);
    std::vector<std::size_t> st{holding[0]};
    vis[holding[0]] = 1;
    std::size_t cnt = 1;
    while (!st.empty()) {
      auto t = st.back();
      st.pop_back();
      for (auto u : adj[t])
        if (hv[u] && !vis[u]) {
          vis[u] = 1;
          ++cnt;
          st.push_back(u);
        }
    }
    if (cnt != holding.size()) return false;
  }
  return true;
}

/// Induced width of an elimination order (max higher-neighborhood size in the
/// fill graph).
inline std::size_t induced_width(const Graph& g, const std::vector<std::size_t>& order) {
  const std::size_t n = g.size();
  std::vector<BitVec> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v] = g.row(v);
  BitVec remaining(n);
  remaining.set();
  std::size_t width = 0;
  for (std::size_t v : order) {
    remaining.reset(v);
    BitVec nb = adj[v] & remaining;
    width = std::max(width, nb.count());
    for (std::size_t u = nb.find_first(); u != BitVec::npos; u = nb.find_next(u)) {
      adj[u] |= nb;
      adj[u].reset(u);
    }
  }
  return width;
}

/// Standard bag construction from an elimination order; the result is a valid
/// tree decomposition whose width is the induced width of the order.
inline TreeDecomposition decomposition_from_order(const Graph& g,
                                                  const std::vector<std::size_t>& order) {
  const std::size_t n = g.size();
  TreeDecomposition td;
  if (n == 0) return td;
  std::vector<BitVec> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v] = g.row(v);
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  BitVec remaining(n);
  remaining.set();
  std::vector<BitVec> higher(n);  // fill-neighborhood among later vertices, per vertex
  for (std::size_t v : order) {
    remaining.reset(v);
    BitVec nb = adj[v] & remaining;
    higher[v] = nb;
    for (std::size_t u = nb.find_first(); u != BitVec::npos; u = nb.find_next(u)) {
      adj[u] |= nb;
      adj[u].reset(u);
    }
  }
  // Bag i holds order[i] plus its higher fill-neighbors; bag i attaches to the
  // bag of the earliest-eliminated higher neighbor. Vertices with no higher
  // neighbor start a component; chain those roots to keep a single tree.
  td.bags.resize(n, BitVec(n));
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t v = order[i];
    td.bags[i] = higher[v];
    td.bags[i].set(v);
    if (higher[v].none()) {
      roots.push_back(i);
    } else {
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (std::size_t u = higher[v].find_first(); u != BitVec::npos;
           u = higher[v].find_next(u))
        best = std::min(best, rank[u]);
      td.edges.emplace_back(i, best);
    }
  }
  for (std::size_t k = 1; k < roots.size(); ++k) td.edges.emplace_back(roots[k - 1], roots[k]);
  return td;
}

/// Min-fill heuristic: (induced width upper bound, elimination order).
inline std::pair<std::size_t, std::vector<std::size_t>> treewidth_minfill_ub(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<BitVec> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v] = g.row(v);
  BitVec remaining(n);
  remaining.set();
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best_v = 0;
    long long best_fill = -1;
    for (std::size_t v = remaining.find_first(); v != BitVec::npos; v = remaining.find_next(v)) {
      BitVec nb = adj[v] & remaining;
      long long fill = 0;
      for (std::size_t u = nb.find_first(); u != BitVec::npos; u = nb.find_next(u)) {
        BitVec missing = nb - adj[u];
        missing.reset(u);
        fill += static_cast<long long>(missing.count());
      }
      fill /= 2;
      if (best_fill < 0 || fill < best_fill) {  // ties break toward lower index
        best_fill = fill;
        best_v = v;
      }
    }
    order.push_back(best_v);
    remaining.reset(best_v);
    BitVec nb = adj[best_v] & remaining;
    for (std::size_t u = nb.find_first(); u != BitVec::npos; u = nb.find_next(u)) {
      adj[u] |= nb;
      adj[u].reset(u);
    }
  }
  return {induced_width(g, order), order};
}

inline constexpr std::size_t kTreewidthExactCap = 14;

/// Exact treewidth by the subset dynamic program over elimination prefixes,
/// with a witness decomposition built from the optimal order. Capped at n=14
/// by default; callers may raise the cap explicitly (hard limit 20).
inline std::pair<std::size_t, TreeDecomposition> treewidth_exact(
    const Graph& g, std::size_t cap = kTreewidthExactCap) {
  const std::size_t n = g.size();
  if (n > cap || n > 20)
    throw ResourceCapError("treewidth_exact capped at n=" + std::to_string(std::min<std::size_t>(cap, 20)));
  if (n == 0) return {0, TreeDecomposition{}};

  // q(S, v): number of vertices outside S+{v} reachable from v through S.
  auto q_value = [&](uint32_t S, std::size_t v) -> std::size_t {
    BitVec through(n);
    for (std::size_t i = 0; i < n; ++i)
      if (S >> i & 1u) through.set(i);
    BitVec reached(n), frontier(n);
    frontier.set(v);
    BitVec visited = frontier;
    while (frontier.any()) {
      BitVec next(n);
      for (std::size_t u = frontier.find_first(); u != BitVec::npos; u = frontier.find_next(u))
        next |= g.row(u);
      next -= visited;
      visited |= next;
      reached |= next & ~through;
      frontier = next & through;
    }
    reached.reset(v);
    return reached.count();
  };

  const uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  std::vector<uint8_t> f(static_cast<std::size_t>(full) + 1, 0xff);
  std::vector<int8_t> choice(static_cast<std::size_t>(full) + 1, -1);
  f[0] = 0;
  // Iterate subsets in increasing popcount via plain order (S\{v} < S always).
  for (uint32_t S = 1; S <= full; ++S) {
    std::size_t best = 0xff;
    int bestv = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(S >> v & 1u)) continue;
      uint32_t prev = S & ~(1u << v);
      std::size_t cand = std::max<std::size_t>(f[prev], q_value(prev, v));
      if (cand < best) {
        best = cand;
        bestv = static_cast<int>(v);
      }
    }
    f[S] = static_cast<uint8_t>(best);
    choice[S] = static_cast<int8_t>(bestv);
  }
  std::vector<std::size_t> order(n);
  uint32_t S = full;
  for (std::size_t i = n; i-- > 0;) {
    std::size_t v = static_cast<std::size_t>(choice[S]);
    order[i] = v;
    S &= ~(1u << v);
  }
  TreeDecomposition td = decomposition_from_order(g, order);
  return {f[full], td};
}

}  // namespace sqsim

#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sqsim/common.hpp"

namespace sqsim {

/// Simple undirected graph stored as dense GF(2) adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), rows_(n, BitVec(n)) {}

  std::size_t size() const { return n_; }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= n_ || v >= n_) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop not allowed");
    rows_[u].set(v);
    rows_[v].set(u);
  }

  bool has_edge(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
  const BitVec& row(std::size_t v) const { return rows_[v]; }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.count();
    return total / 2;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = rows_[u].find_first(); v != BitVec::npos; v = rows_[u].find_next(v))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  std::size_t n_ = 0;
  std::vector<BitVec> rows_;
};

using BitMatrix = std::vector<BitVec>;

/// Rank over GF(2) by row elimination.
inline std::size_t gf2_rank(BitMatrix m) {
  std::size_t rank = 0;
  const std::size_t width = m.empty() ? 0 : m.front().size();
  for (std::size_t col = 0; col < width && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && !m[pivot].test(col)) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != rank && m[i].test(col)) m[i] ^= m[rank];
    ++rank;
  }
  return rank;
}

/// Cut-rank of S: GF(2) rank of A[S, V\S]. `s` is a membership mask over V.
inline std::size_t cut_rank(const Graph& g, const BitVec& s) {
  const std::size_t n = g.size();
  if (s.size() != n) throw ValidationError("cut mask size mismatch");
  BitVec comp = ~s;
  // Columns restricted to the complement, compacted.
  std::vector<std::size_t> cols;
  for (std::size_t v = comp.find_first(); v != BitVec::npos; v = comp.find_next(v))
    cols.push_back(v);
  BitMatrix m;
  for (std::size_t v = s.find_first(); v != BitVec::npos; v = s.find_next(v)) {
    BitVec row(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (g.row(v).test(cols[j])) row.set(j);
    m.push_back(std::move(row));
  }
  return gf2_rank(std::move(m));
}

inline BitVec subset_mask(std::size_t n, std::initializer_list<std::size_t> vs) {
  BitVec b(n);
  for (auto v : vs) b.set(v);
  return b;
}

// `.g` format: `vertices N`, then `edge u v` lines; `#` starts a comment.
inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_vertices = false;
  Graph g;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "vertices") {
      long n = -1;
      if (!(ls >> n) || n < 0) throw ParseError("bad vertices directive", lineno);
      if (have_vertices) throw ParseError("duplicate vertices directive", lineno);
      g = Graph(static_cast<std::size_t>(n));
      have_vertices = true;
    } else if (tok == "edge") {
      if (!have_vertices) throw ParseError("edge before vertices directive", lineno);
      long u = -1, v = -1;
      if (!(ls >> u >> v) || u < 0 || v < 0) throw ParseError("bad edge line", lineno);
      if (static_cast<std::size_t>(u) >= g.size() || static_cast<std::size_t>(v) >= g.size())
        throw ParseError("edge endpoint out of range", lineno);
      if (u == v) throw ParseError("self-loop", lineno);
      g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    } else {
      throw ParseError("unknown token '" + tok + "'", lineno);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
  }
  if (!have_vertices) throw ParseError("missing vertices directive");
  return g;
}

inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "vertices " << g.size() << "\n";
  for (auto [u, v] : g.edges()) out << "edge " << u << " " << v << "\n";
  return out.str();
}

}  // namespace sqsim

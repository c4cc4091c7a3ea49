#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "sqsim/common.hpp"
#include "sqsim/rank_decomp.hpp"
#include "sqsim/sop.hpp"

namespace sqsim {

/// Residue counts N_0..N_{r-1}: N_j = #{x | f(x) = j mod r}.
struct ResidueCounts {
  int r = 8;
  std::vector<BigInt> counts;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& n : counts) t += n;
    return t;
  }
  bool operator==(const ResidueCounts& o) const { return r == o.r && counts == o.counts; }
};

struct Amplitude {
  ResidueCounts counts;
  std::size_t hadamard_count = 0;
  Complex numeric{0.0, 0.0};
};

/// Z = 2^{-m_H/2} * sum_j N_j omega_r^j; exact 0 for inconsistent instances.
inline Amplitude amplitude_from_counts(const ResidueCounts& n, std::size_t m_h,
                                       SopStatus status) {
  Amplitude a;
  a.counts = n;
  a.hadamard_count = m_h;
  if (status == SopStatus::Inconsistent) {
    a.numeric = {0.0, 0.0};
    return a;
  }
  Complex z{0.0, 0.0};
  for (int j = 0; j < n.r; ++j)
    z += n.counts[j].convert_to<double>() * root_of_unity(n.r, j);
  a.numeric = z * std::pow(2.0, -0.5 * static_cast<double>(m_h));
  return a;
}

/// Sparse DP table at one decomposition node: (signature, residue) -> count,
/// plus one witness assignment per signature.
struct DpTable {
  BitVec X;  // vertices below this node
  std::map<std::pair<BitVec, int>, BigInt> entries;
  std::map<BitVec, BitVec> witness;

  std::size_t distinct_signatures() const { return witness.size(); }
};

/// Optional capture of all intermediate tables, for verification.
struct DpTrace {
  std::vector<DpTable> tables;  // indexed by rooted-decomposition node id
};

/// Cross-edge parity between a left signature and a realized right assignment:
/// popcount(alpha & X_R & witness_b) mod 2. Well-defined per signature.
inline int cross_parity(const BitVec& alpha, const BitVec& xr_mask, const BitVec& witness_b) {
  return static_cast<int>((alpha & xr_mask & witness_b).count() & 1u);
}

namespace detail {

inline DpTable rank_dp_leaf(const SopInstance& s, const BitVec& x_mask, std::size_t v) {
  DpTable t;
  t.X = x_mask;
  const std::size_t n = s.num_vars();
  BitVec zero_sig(n), zero_wit(n);
  BitVec one_sig = s.graph.row(v) & ~x_mask;
  BitVec one_wit(n);
  one_wit.set(v);
  // += on both states: they may coincide when the row is empty and b_v = 0.
  t.entries[{zero_sig, 0}] += 1;
  t.witness.emplace(zero_sig, zero_wit);
  t.entries[{one_sig, s.b[v] % s.r}] += 1;
  t.witness.emplace(one_sig, one_wit);
  return t;
}

inline DpTable rank_dp_join(const SopInstance& s, const DpTable& left, const DpTable& right) {
  DpTable t;
  t.X = left.X | right.X;
  const BitVec y_mask = ~t.X;
  const BitVec& xr_mask = right.X;
  for (const auto& [kl, cl] : left.entries) {
    const auto& [alpha, p] = kl;
    for (const auto& [kr, cr] : right.entries) {
      const auto& [beta, q] = kr;
      BitVec gamma = (alpha ^ beta) & y_mask;
      int chi = cross_parity(alpha, xr_mask, right.witness.at(beta));
      int res = (p + q + s.eta * chi) % s.r;
      t.entries[{gamma, res}] += cl * cr;
      t.witness.emplace(gamma, left.witness.at(alpha) | right.witness.at(beta));
    }
  }
  return t;
}

inline void check_dp_inputs(const SopInstance& s, const RootedDecomposition& d) {
  if (s.status != SopStatus::Consistent) throw ValidationError("instance is inconsistent");
  if (s.num_vars() == 0) {
    if (!d.empty() && d.n_vertices != 0)
      throw ValidationError("nonempty decomposition for an empty instance");
    return;
  }
  if (d.empty() || d.n_vertices != s.num_vars())
    throw ValidationError("decomposition does not match the instance variables");
}

inline ResidueCounts counts_from_root_residues(const SopInstance& s,
                                               const std::vector<BigInt>& root) {
  ResidueCounts out;
  out.r = s.r;
  out.counts.resize(s.r);
  for (int j = 0; j < s.r; ++j) out.counts[j] = root[((j - s.c) % s.r + s.r) % s.r];
  return out;
}

}  // namespace detail

/// Rank-decomposition dynamic program for SopCount: exact integer counts.
inline ResidueCounts sopcount_rank_dp(const SopInstance& s, const RootedDecomposition& d,
                                      DpTrace* trace = nullptr) {
  detail::check_dp_inputs(s, d);
  if (s.num_vars() == 0) {
    ResidueCounts out;
    out.r = s.r;
    out.counts.assign(s.r, 0);
    out.counts[s.c] = 1;
    return out;
  }
  std::vector<DpTable> tables(d.nodes.size());
  // Post-order over the rooted tree.
  std::vector<std::size_t> order;
  {
    std::vector<std::size_t> st{d.root};
    while (!st.empty()) {
      auto u = st.back();
      st.pop_back();
      order.push_back(u);
      if (d.nodes[u].left >= 0) st.push_back(static_cast<std::size_t>(d.nodes[u].left));
      if (d.nodes[u].right >= 0) st.push_back(static_cast<std::size_t>(d.nodes[u].right));
    }
    std::reverse(order.begin(), order.end());
  }
  for (std::size_t u : order) {
    const RootedNode& node = d.nodes[u];
    if (node.left < 0 && node.right < 0) {
      tables[u] = detail::rank_dp_leaf(s, node.X, static_cast<std::size_t>(node.leaf_vertex));
    } else if (node.right < 0) {
      tables[u] = tables[static_cast<std::size_t>(node.left)];  // pass-through node
    } else {
      tables[u] = detail::rank_dp_join(s, tables[static_cast<std::size_t>(node.left)],
                                       tables[static_cast<std::size_t>(node.right)]);
    }
  }
  const DpTable& root = tables[d.root];
  std::vector<BigInt> res(s.r, 0);
  BitVec empty_sig(s.num_vars());
  for (const auto& [k, c] : root.entries) {
    if (k.first != empty_sig)
      throw ValidationError("root table has a nonempty signature");
    res[k.second] += c;
  }
  if (trace) trace->tables = std::move(tables);
  return detail::counts_from_root_residues(s, res);
}

/// Fourier-mode variant: one complex accumulator per signature and mode,
/// integer counts recovered by the inverse transform with a rounding gate.
inline ResidueCounts sopcount_fourier(const SopInstance& s, const RootedDecomposition& d) {
  detail::check_dp_inputs(s, d);
  const int r = s.r;
  if (s.num_vars() == 0) {
    ResidueCounts out;
    out.r = r;
    out.counts.assign(r, 0);
    out.counts[s.c] = 1;
    return out;
  }
  std::vector<std::size_t> order;
  {
    std::vector<std::size_t> st{d.root};
    while (!st.empty()) {
      auto u = st.back();
      st.pop_back();
      order.push_back(u);
      if (d.nodes[u].left >= 0) st.push_back(static_cast<std::size_t>(d.nodes[u].left));
      if (d.nodes[u].right >= 0) st.push_back(static_cast<std::size_t>(d.nodes[u].right));
    }
    std::reverse(order.begin(), order.end());
  }
  const std::size_t n = s.num_vars();
  std::vector<Complex> root_modes(r);
  for (int a = 0; a < r; ++a) {
    // table per node: signature -> (amplitude, witness); maps iterate in a
    // fixed key order, so the accumulation order is deterministic.
    using ModeTable = std::map<BitVec, std::pair<Complex, BitVec>>;
    std::vector<ModeTable> tables(d.nodes.size());
    for (std::size_t u : order) {
      const RootedNode& node = d.nodes[u];
      ModeTable& t = tables[u];
      if (node.left < 0 && node.right < 0) {
        auto v = static_cast<std::size_t>(node.leaf_vertex);
        BitVec zero_sig(n), zero_wit(n);
        BitVec one_sig = s.graph.row(v) & ~node.X;
        BitVec one_wit(n);
        one_wit.set(v);
        auto& e0 = t[zero_sig];
        e0.first += 1.0;
        e0.second = zero_wit;
        auto it = t.find(one_sig);
        if (it == t.end())
          t.emplace(one_sig, std::make_pair(root_of_unity(r, static_cast<long long>(a) * s.b[v]),
                                            one_wit));
        else
          it->second.first += root_of_unity(r, static_cast<long long>(a) * s.b[v]);
      } else if (node.right < 0) {
        t = tables[static_cast<std::size_t>(node.left)];
      } else {
        const ModeTable& lt = tables[static_cast<std::size_t>(node.left)];
        const ModeTable& rt = tables[static_cast<std::size_t>(node.right)];
        const BitVec y_mask = ~node.X;
        const BitVec& xr_mask = d.nodes[static_cast<std::size_t>(node.right)].X;
        for (const auto& [alpha, le] : lt) {
          for (const auto& [beta, re] : rt) {
            BitVec gamma = (alpha ^ beta) & y_mask;
            int chi = cross_parity(alpha, xr_mask, re.second);
            // kernel (-1)^{a*chi}: only the parity of the mode matters
            double kernel = (a % 2 == 1 && chi == 1) ? -1.0 : 1.0;
            auto it = t.find(gamma);
            if (it == t.end())
              t.emplace(gamma, std::make_pair(le.first * re.first * kernel,
                                              le.second | re.second));
            else
              it->second.first += le.first * re.first * kernel;
          }
        }
      }
    }
    BitVec empty_sig(n);
    const ModeTable& root = tables[d.root];
    auto it = root.find(empty_sig);
    root_modes[a] = (it == root.end()) ? Complex{0.0, 0.0} : it->second.first;
  }
  ResidueCounts out;
  out.r = r;
  out.counts.resize(r);
  for (int j = 0; j < r; ++j) {
    Complex acc{0.0, 0.0};
    for (int a = 0; a < r; ++a)
      acc += root_of_unity(r, static_cast<long long>(a) * (s.c - j)) * root_modes[a];
    double value = acc.real() / r;
    double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-6 || std::abs(acc.imag() / r) > 1e-6)
      throw ValidationError("fourier-precision error: count rounding exceeded 1e-6");
    out.counts[j] = BigInt(static_cast<long long>(rounded));
  }
  return out;
}

/// Bucket elimination on the primal graph G_C: messages map separator
/// assignments to residue-count vectors; combination convolves over Z_r.
inline ResidueCounts sopcount_bucket(const SopInstance& s, const std::vector<std::size_t>& order,
                                     std::size_t max_scope = 25) {
  if (s.status != SopStatus::Consistent) throw ValidationError("instance is inconsistent");
  const std::size_t n = s.num_vars();
  {
    std::vector<char> seen(n, 0);
    if (order.size() != n) throw ValidationError("order is not a permutation");
    for (auto v : order) {
      if (v >= n || seen[v]) throw ValidationError("order is not a permutation");
      seen[v] = 1;
    }
  }
  const int r = s.r;
  struct Factor {
    std::vector<std::size_t> scope;  // sorted variable ids
    std::vector<std::vector<BigInt>> table;  // per scope assignment, residue vector
  };
  auto unit_vec = [&](int residue) {
    std::vector<BigInt> v(r, 0);
    v[((residue % r) + r) % r] = 1;
    return v;
  };
  std::vector<Factor> factors;
  for (std::size_t v = 0; v < n; ++v) {
    Factor f;
    f.scope = {v};
    f.table = {unit_vec(0), unit_vec(s.b[v])};
    factors.push_back(std::move(f));
  }
  for (auto [u, v] : s.graph.edges()) {
    Factor f;
    f.scope = {std::min(u, v), std::max(u, v)};
    f.table = {unit_vec(0), unit_vec(0), unit_vec(0), unit_vec(s.eta)};
    factors.push_back(std::move(f));
  }

  auto convolve = [&](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> out(r, 0);
    for (int i = 0; i < r; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < r; ++j)
        if (b[j] != 0) out[(i + j) % r] += a[i] * b[j];
    }
    return out;
  };
  auto multiply = [&](const Factor& a, const Factor& b) {
    Factor out;
    std::set_union(a.scope.begin(), a.scope.end(), b.scope.begin(), b.scope.end(),
                   std::back_inserter(out.scope));
    if (out.scope.size() > max_scope)
      throw ResourceCapError("bucket separator exceeds cap of " + std::to_string(max_scope));
    const std::size_t m = out.scope.size();
    out.table.resize(std::size_t{1} << m);
    auto project = [&](std::size_t assignment, const std::vector<std::size_t>& scope) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < scope.size(); ++k) {
        std::size_t pos =
            std::lower_bound(out.scope.begin(), out.scope.end(), scope[k]) - out.scope.begin();
        if (assignment >> pos & 1u) idx |= std::size_t{1} << k;
      }
      return idx;
    };
    for (std::size_t asg = 0; asg < out.table.size(); ++asg)
      out.table[asg] = convolve(a.table[project(asg, a.scope)], b.table[project(asg, b.scope)]);
    return out;
  };
  auto sum_out = [&](const Factor& f, std::size_t v) {
    Factor out;
    std::size_t pos =
        std::lower_bound(f.scope.begin(), f.scope.end(), v) - f.scope.begin();
    for (std::size_t k = 0; k < f.scope.size(); ++k)
      if (k != pos) out.scope.push_back(f.scope[k]);
    out.table.resize(std::size_t{1} << out.scope.size());
    for (std::size_t asg = 0; asg < out.table.size(); ++asg) {
      std::size_t low = asg & ((std::size_t{1} << pos) - 1);
      std::size_t high = (asg >> pos) << (pos + 1);
      std::vector<BigInt> acc(r, 0);
      for (int bit = 0; bit <= 1; ++bit) {
        const auto& src = f.table[high | (static_cast<std::size_t>(bit) << pos) | low];
        for (int j = 0; j < r; ++j) acc[j] += src[j];
      }
      out.table[asg] = std::move(acc);
    }
    return out;
  };

  for (std::size_t v : order) {
    Factor bucket;
    bucket.scope = {v};
    bucket.table = {unit_vec(0), unit_vec(0)};
    bucket.table[0][0] = 1;
    bucket.table[1][0] = 1;
    bool first = true;
    std::vector<Factor> rest;
    for (auto& f : factors) {
      if (std::binary_search(f.scope.begin(), f.scope.end(), v)) {
        if (first) {
          bucket = std::move(f);
          first = false;
        } else {
          bucket = multiply(bucket, f);
        }
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(sum_out(bucket, v));
    factors = std::move(rest);
  }
  std::vector<BigInt> res(r, 0);
  res[0] = 1;
  for (const auto& f : factors) {
    if (!f.scope.empty()) throw ValidationError("unexpected nonconstant factor after elimination");
    res = convolve(res, f.table[0]);
  }
  return detail::counts_from_root_residues(s, res);
}

inline ResidueCounts sopcount_bucket(const SopInstance& s) {
  std::vector<std::size_t> order(s.num_vars());
  std::iota(order.begin(), order.end(), 0);
  return sopcount_bucket(s, order);
}

}  // namespace sqsim

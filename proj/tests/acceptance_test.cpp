// One test per acceptance criterion; each prints a single PASS/FAIL line.

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <numeric>
#include <random>

#include "sqsim/families.hpp"
#include "sqsim/oracles.hpp"
#include "sqsim/simulate.hpp"
#include "sqsim/sop_dp.hpp"
#include "sqsim/tensor_network.hpp"
#include "sqsim/treewidth.hpp"
#include "sqsim/wmc.hpp"
#include "test_util.hpp"

using namespace sqsim;

namespace {

void report(int criterion, const char* label, bool failed) {
  std::cout << "[criterion " << criterion << "] " << label << ": " << (failed ? "FAIL" : "PASS")
            << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Shared sweep backing criteria 2, 5, 11, and 12: every circuit is evaluated
// by all methods with full tracing; the criteria check different aspects.
struct SweepResults {
  int circuits = 0;
  int consistent = 0;
  bool counts_equal = true;
  bool amplitudes_match = true;
  bool signature_bound_holds = true;
  bool fourier_gate_clean = true;
  bool mass_conserved = true;
  double runtime_s = 0.0;
};

const SweepResults& sweep() {
  static const SweepResults results = [] {
    SweepResults r;
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20240811);
    for (r.circuits = 0; r.circuits < 500; ++r.circuits) {
      Circuit c = testutil::random_circuit(rng, 5, 14);
      std::string in = testutil::random_bits(rng, c.n_qubits);
      std::string out = testutil::random_bits(rng, c.n_qubits);
      SopInstance s = extract_sop(c, in, out);
      Complex ref = statevector_amplitude(c, in, out);
      if (s.status == SopStatus::Inconsistent) {
        if (std::abs(ref) > 1e-9) r.amplitudes_match = false;
        continue;
      }
      ++r.consistent;
      ResidueCounts brute = sopcount_brute(s);
      if (brute.total() != BigInt(1) << s.num_vars()) r.mass_conserved = false;

      ResidueCounts rank, fourier;
      std::size_t width = 0;
      DpTrace trace;
      if (s.num_vars() > 0) {
        RankDecomposition d = auto_decomposition(s.graph);
        width = decomposition_width(s.graph, d);
        RootedDecomposition rd = root_decomposition(d);
        rank = sopcount_rank_dp(s, rd, &trace);
        try {
          fourier = sopcount_fourier(s, rd);
        } catch (const ValidationError&) {
          r.fourier_gate_clean = false;
          fourier = rank;
        }
        for (const DpTable& table : trace.tables)
          if (table.X.count() < s.num_vars() &&
              table.distinct_signatures() > (std::size_t{1} << width))
            r.signature_bound_holds = false;
      } else {
        RootedDecomposition rd;
        rank = sopcount_rank_dp(s, rd);
        fourier = sopcount_fourier(s, rd);
      }
      ResidueCounts bucket = sopcount_bucket(s, treewidth_minfill_ub(s.graph).second);
      if (!(rank == brute && fourier == brute && bucket == brute)) r.counts_equal = false;
      if (rank.total() != BigInt(1) << s.num_vars()) r.mass_conserved = false;

      Complex amp = amplitude_from_counts(brute, s.hadamard_count, s.status).numeric;
      if (std::abs(amp - ref) > 1e-9) r.amplitudes_match = false;
    }
    r.runtime_s = seconds_since(start);
    return r;
  }();
  return results;
}

}  // namespace

TEST(Acceptance, Criterion1RunningExample) {
  auto start = std::chrono::steady_clock::now();
  Circuit c = testutil::running_example();
  for (Method m :
       {Method::RankDp, Method::Fourier, Method::Bucket, Method::Brute, Method::Statevector}) {
    SimResult res = simulate(c, "000", "000", m);
    EXPECT_NEAR(res.amplitude.real(), 0.5, 1e-9) << method_name(m);
    EXPECT_NEAR(res.amplitude.imag(), 0.0, 1e-9) << method_name(m);
    if (m != Method::Statevector) {
      ASSERT_TRUE(res.counts.has_value());
      const auto& n = res.counts->counts;
      EXPECT_EQ(n[0], 4);
      EXPECT_EQ(n[1], 2);
      EXPECT_EQ(n[5], 2);
      EXPECT_EQ(n[2] + n[3] + n[4] + n[6] + n[7], 0);
    }
  }
  EXPECT_LT(seconds_since(start), 1.0);
  report(1, "running example, all five methods", HasFailure());
}

TEST(Acceptance, Criterion2OracleEquivalenceSweep) {
  const SweepResults& r = sweep();
  EXPECT_GE(r.circuits, 500);
  EXPECT_GE(r.consistent, 100);  // the sweep must exercise real instances
  EXPECT_TRUE(r.counts_equal);
  EXPECT_TRUE(r.amplitudes_match);
  EXPECT_LT(r.runtime_s, 120.0);
  report(2, "500-circuit oracle equivalence sweep", HasFailure());
}

TEST(Acceptance, Criterion3TableInvariant) {
  std::mt19937 rng(137);
  std::uniform_int_distribution<int> expo(0, 7);
  int checked = 0;
  while (checked < 50) {
    Graph g = testutil::random_graph(rng, 10);
    SopInstance s;
    s.graph = g;
    for (std::size_t v = 0; v < g.size(); ++v) {
      s.vars.push_back(VarId{v, 1});
      s.b.push_back(expo(rng));
    }
    s.c = expo(rng);
    const std::size_t n = s.num_vars();
    RankDecomposition d = decompose_greedy_bisection(g);
    RootedDecomposition rd = root_decomposition(d);
    DpTrace trace;
    sopcount_rank_dp(s, rd, &trace);
    for (std::size_t u = 0; u < rd.nodes.size(); ++u) {
      const BitVec& x = rd.nodes[u].X;
      std::vector<std::size_t> members;
      for (std::size_t v = x.find_first(); v != BitVec::npos; v = x.find_next(v))
        members.push_back(v);
      std::map<std::pair<BitVec, int>, BigInt> want;
      for (std::size_t asg = 0; asg < (std::size_t{1} << members.size()); ++asg) {
        BitVec sig(n);
        long long phi = 0;
        for (std::size_t k = 0; k < members.size(); ++k) {
          if (!(asg >> k & 1u)) continue;
          sig ^= g.row(members[k]);
          phi += s.b[members[k]];
          for (std::size_t l = k + 1; l < members.size(); ++l)
            if ((asg >> l & 1u) && g.has_edge(members[k], members[l])) phi += s.eta;
        }
        want[{sig & ~x, static_cast<int>(phi % s.r)}] += 1;
      }
      EXPECT_EQ(trace.tables[u].entries, want);
    }
    ++checked;
  }
  report(3, "intermediate tables equal restricted brute counts", HasFailure());
}

TEST(Acceptance, Criterion4SignatureDeterminesParity) {
  std::mt19937 rng(139);
  int checked = 0;
  while (checked < 100) {
    Graph g = testutil::random_graph(rng, 10);
    const std::size_t n = g.size();
    if (n < 2) continue;
    std::uniform_int_distribution<std::size_t> sub(1, (std::size_t{1} << n) - 2);
    BitVec xl(n, sub(rng));
    BitVec xr = ~xl;
    auto signature = [&](const BitVec& a) {
      BitVec sig(n);
      for (std::size_t v = a.find_first(); v != BitVec::npos; v = a.find_next(v))
        sig ^= g.row(v);
      return sig & ~xl;
    };
    auto chi = [&](const BitVec& a, const BitVec& b) {
      int parity = 0;
      for (std::size_t u = a.find_first(); u != BitVec::npos; u = a.find_next(u))
        parity ^= static_cast<int>((g.row(u) & b).count() & 1u);
      return parity;
    };
    std::map<BitVec, BitVec> rep;
    bool found = false;
    for (int trial = 0; trial < 80 && !found; ++trial) {
      BitVec a(n);
      for (std::size_t v = xl.find_first(); v != BitVec::npos; v = xl.find_next(v))
        if (rng() & 1u) a.set(v);
      BitVec sig = signature(a);
      auto it = rep.find(sig);
      if (it == rep.end()) {
        rep.emplace(sig, a);
        continue;
      }
      if (it->second == a) continue;
      found = true;
      BitVec b(n);
      for (std::size_t v = xr.find_first(); v != BitVec::npos; v = xr.find_next(v))
        if (rng() & 1u) b.set(v);
      EXPECT_EQ(chi(it->second, b), chi(a, b));
      EXPECT_EQ(cross_parity(sig, xr, b), chi(a, b));
    }
    if (found) ++checked;
  }
  report(4, "equal signatures give equal cross parity", HasFailure());
}

TEST(Acceptance, Criterion5SignatureBound) {
  const SweepResults& r = sweep();
  EXPECT_TRUE(r.signature_bound_holds);
  report(5, "distinct signatures per node <= 2^width", HasFailure());
}

TEST(Acceptance, Criterion6WidthRelations) {
  std::mt19937 rng(149);
  std::vector<Graph> graphs;
  for (int i = 0; i < 12; ++i) graphs.push_back(testutil::random_graph(rng, 6));
  for (std::size_t k = 2; k <= 6; ++k) {
    graphs.push_back(testutil::path_graph(k));
    graphs.push_back(testutil::complete_graph(k));
  }
  for (const Graph& g : graphs) {
    std::size_t lrw = linear_rankwidth_exact(g);
    EXPECT_LE(rankwidth_exact(g).first, lrw);
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t best = g.size() + 1;
    do {
      best = std::min(best, decomposition_width(g, caterpillar_from_order(g, order)));
    } while (std::next_permutation(order.begin(), order.end()));
    EXPECT_EQ(best, lrw);
  }
  // Larger named graphs: compare against the layout-based search directly.
  Graph b2 = complete_binary_tree(2);
  EXPECT_EQ(linear_rankwidth_exact(b2), 1u);
  EXPECT_LE(rankwidth_exact(b2).first, 1u);
  Graph p7 = testutil::path_graph(7);
  EXPECT_LE(rankwidth_exact(p7).first, linear_rankwidth_exact(p7));
  Graph k7 = testutil::complete_graph(7);
  EXPECT_LE(rankwidth_exact(k7).first, linear_rankwidth_exact(k7));
  report(6, "rank-width / linear rank-width / caterpillar relations", HasFailure());
}

TEST(Acceptance, Criterion7CircuitGraphBelowLineGraph) {
  std::mt19937 rng(151);
  int checked = 0;
  while (checked < 100) {
    Circuit c = testutil::random_circuit(rng, 4, 10);
    TensorNetwork tn = tensor_network_graph(c);
    if (tn.bonds.size() > kTreewidthExactCap) continue;
    SopInstance s = extract_sop(c, std::string(c.n_qubits, '0'), std::string(c.n_qubits, '0'));
    if (s.num_vars() > kTreewidthExactCap) continue;
    EXPECT_LE(treewidth_exact(s.graph).first, treewidth_exact(line_graph(tn)).first);
    ++checked;
  }
  report(7, "treewidth(G_C) <= treewidth(L(N_C))", HasFailure());
}

TEST(Acceptance, Criterion8GraphRealization) {
  std::mt19937 rng(157);
  for (int i = 0; i < 50; ++i) {
    Graph g = testutil::random_graph(rng, 8);
    Circuit c = circuit_from_graph(g);
    EXPECT_EQ(c.gates.size(), 2 * g.size() + g.edge_count());
    SopInstance s = extract_sop(c, std::string(c.n_qubits, '0'), std::string(c.n_qubits, '0'));
    EXPECT_EQ(s.graph, g);
  }
  report(8, "circuit_from_graph realizes every graph", HasFailure());
}

TEST(Acceptance, Criterion9SeparatingFamily) {
  for (std::size_t h = 1; h <= 3; ++h)
    for (std::size_t t = 1; t <= 3; ++t) {
      FamilyInstance f = separating_family(h, t);
      validate_decomposition(f.variable_graph, f.witness);
      EXPECT_LE(decomposition_width(f.variable_graph, f.witness), 2u);
    }
  for (std::size_t t = 2; t <= 5; ++t) {
    Graph g = blowup(complete_binary_tree(1), t);
    EXPECT_GE(treewidth_exact(g, 15).first, t - 1);
  }
  // h=3, t=3: 45 free variables, far beyond brute force; the witness keeps
  // the DP tables tiny.
  FamilyInstance big = separating_family(3, 3);
  SopInstance s = extract_sop(big.circuit, std::string(big.circuit.n_qubits, '0'),
                              std::string(big.circuit.n_qubits, '0'));
  ASSERT_EQ(s.num_vars(), 45u);
  auto start = std::chrono::steady_clock::now();
  ResidueCounts n = sopcount_rank_dp(s, root_decomposition(big.witness));
  double elapsed = seconds_since(start);
  EXPECT_LT(elapsed, 10.0);
  EXPECT_EQ(n.total(), BigInt(1) << 45);
  report(9, "separating family: witness width <= 2, 45-var DP < 10 s", HasFailure());
}

TEST(Acceptance, Criterion10WmcSemantics) {
  std::mt19937 rng(163);
  std::uniform_int_distribution<int> expo(0, 7);
  int checked = 0;
  while (checked < 100) {
    Graph g = testutil::random_graph(rng, 6);
    if (g.size() + g.edge_count() > 20) continue;
    SopInstance s;
    s.graph = g;
    for (std::size_t v = 0; v < g.size(); ++v) {
      s.vars.push_back(VarId{v, 1});
      s.b.push_back(expo(rng));
    }
    s.c = expo(rng);
    s.hadamard_count = 2 * g.size();
    Complex via_wmc = root_of_unity(s.r, s.c) * naive_weighted_count(encode_wmc(s)) *
                      std::pow(2.0, -0.5 * static_cast<double>(s.hadamard_count));
    Complex via_brute =
        amplitude_from_counts(sopcount_brute(s), s.hadamard_count, s.status).numeric;
    EXPECT_NEAR(std::abs(via_wmc - via_brute), 0.0, 1e-9);
    ++checked;
  }
  report(10, "weighted-model-count amplitude recovery", HasFailure());
}

TEST(Acceptance, Criterion11FourierPrecision) {
  const SweepResults& r = sweep();
  EXPECT_TRUE(r.fourier_gate_clean);
  // Adversarial size: 30 variables through the witness decomposition; the
  // float path must still round to the exact integer counts.
  FamilyInstance f = separating_family(1, 10);
  SopInstance s = extract_sop(f.circuit, std::string(f.circuit.n_qubits, '0'),
                              std::string(f.circuit.n_qubits, '0'));
  ASSERT_EQ(s.num_vars(), 30u);
  RootedDecomposition rd = root_decomposition(f.witness);
  ResidueCounts exact = sopcount_rank_dp(s, rd);
  ResidueCounts rounded = sopcount_fourier(s, rd);
  EXPECT_EQ(exact, rounded);
  EXPECT_EQ(exact.total(), BigInt(1) << 30);
  report(11, "fourier rounding gate never trips", HasFailure());
}

TEST(Acceptance, Criterion12MassConservation) {
  const SweepResults& r = sweep();
  EXPECT_TRUE(r.mass_conserved);
  SopInstance ex = extract_sop(testutil::running_example(), "000", "000");
  EXPECT_EQ(sopcount_brute(ex).total(), BigInt(8));
  report(12, "residue counts sum to 2^|V|", HasFailure());
}

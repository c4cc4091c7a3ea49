#include <gtest/gtest.h>

#include <random>

#include "sqsim/families.hpp"
#include "sqsim/rank_decomp.hpp"
#include "sqsim/sop.hpp"
#include "sqsim/treewidth.hpp"
#include "test_util.hpp"

using namespace sqsim;

TEST(CircuitFromGraph, Examples) {
  Graph p3 = testutil::path_graph(3);
  Circuit c = circuit_from_graph(p3);
  EXPECT_EQ(c.n_qubits, 3u);
  EXPECT_EQ(c.gates.size(), 8u);  // 2*3 H + 2 CZ
  SopInstance s = extract_sop(c, "000", "000");
  EXPECT_EQ(s.graph, p3);
  EXPECT_EQ(s.b, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(s.c, 0);

  Graph edgeless(2);
  Circuit c2 = circuit_from_graph(edgeless);
  EXPECT_EQ(c2.gates.size(), 4u);
  EXPECT_EQ(extract_sop(c2, "00", "00").graph.edge_count(), 0u);

  Graph k3 = testutil::complete_graph(3);
  Circuit c3 = circuit_from_graph(k3);
  EXPECT_EQ(c3.gates.size(), 9u);
  EXPECT_EQ(extract_sop(c3, "000", "000").graph, k3);
}

TEST(CircuitFromGraph, RealizesRandomGraphs) {
  std::mt19937 rng(127);
  for (int i = 0; i < 60; ++i) {
    Graph g = testutil::random_graph(rng, 8);
    Circuit c = circuit_from_graph(g);
    EXPECT_EQ(c.gates.size(), 2 * g.size() + g.edge_count());
    SopInstance s = extract_sop(c, std::string(c.n_qubits, '0'), std::string(c.n_qubits, '0'));
    EXPECT_EQ(s.graph, g);
    EXPECT_EQ(s.c, 0);
    for (int b : s.b) EXPECT_EQ(b, 0);
  }
}

TEST(CompleteBinaryTree, Sizes) {
  EXPECT_EQ(complete_binary_tree(0).size(), 1u);
  EXPECT_EQ(complete_binary_tree(0).edge_count(), 0u);
  EXPECT_EQ(complete_binary_tree(1).size(), 3u);
  EXPECT_EQ(complete_binary_tree(1).edge_count(), 2u);
  Graph b2 = complete_binary_tree(2);
  EXPECT_EQ(b2.size(), 7u);
  EXPECT_EQ(b2.edge_count(), 6u);
  EXPECT_TRUE(b2.has_edge(0, 1));
  EXPECT_TRUE(b2.has_edge(2, 6));
}

TEST(Blowup, Examples) {
  Graph p3 = testutil::path_graph(3);
  EXPECT_EQ(blowup(p3, 1), p3);
  Graph b1t2 = blowup(complete_binary_tree(1), 2);
  EXPECT_EQ(b1t2.size(), 6u);
  EXPECT_EQ(b1t2.edge_count(), 11u);  // 3 clique edges + 2 * 4 bipartite
  Graph two_triangles = blowup(Graph(2), 3);
  EXPECT_EQ(two_triangles.size(), 6u);
  EXPECT_EQ(two_triangles.edge_count(), 6u);
  EXPECT_FALSE(two_triangles.has_edge(0, 3));
  EXPECT_THROW(blowup(p3, 0), ValidationError);
}

TEST(SeparatingFamily, SmallInstances) {
  FamilyInstance f11 = separating_family(1, 1);
  EXPECT_EQ(f11.circuit.n_qubits, 3u);
  EXPECT_EQ(decomposition_width(f11.variable_graph, f11.witness), 1u);

  FamilyInstance f22 = separating_family(2, 2);
  EXPECT_EQ(f22.circuit.n_qubits, 14u);
  EXPECT_EQ(decomposition_width(f22.variable_graph, f22.witness), 1u);

  EXPECT_THROW(separating_family(0, 1), ValidationError);
  EXPECT_THROW(separating_family(1, 0), ValidationError);
}

TEST(SeparatingFamily, WitnessAndGraphInvariants) {
  for (std::size_t h = 1; h <= 3; ++h)
    for (std::size_t t = 1; t <= 3; ++t) {
      FamilyInstance f = separating_family(h, t);
      Graph expect = blowup(complete_binary_tree(h), t);
      EXPECT_EQ(f.variable_graph, expect);
      SopInstance s = extract_sop(f.circuit, std::string(f.circuit.n_qubits, '0'),
                                  std::string(f.circuit.n_qubits, '0'));
      EXPECT_EQ(s.graph, expect);
      validate_decomposition(f.variable_graph, f.witness);
      EXPECT_LE(decomposition_width(f.variable_graph, f.witness), 2u);
    }
}

TEST(SeparatingFamily, CliqueLowerBound) {
  // Gamma_{1,t} contains K_t (any blown-up vertex), so treewidth >= t-1; the
  // t=5 instance has 15 vertices and needs the raised exact-solver cap.
  for (std::size_t t = 2; t <= 5; ++t) {
    Graph g = blowup(complete_binary_tree(1), t);
    EXPECT_GE(treewidth_exact(g, 15).first, t - 1);
  }
  // (h=2, t=4) also contains K_4: check via min-fill + the contained clique.
  Graph g24 = blowup(complete_binary_tree(2), 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_TRUE(g24.has_edge(i, j));
  EXPECT_GE(treewidth_minfill_ub(g24).first, 3u);
}

TEST(SeparatingFamily, LinearLayoutBaseline) {
  // The h=2 skeleton itself: linear rank-width 1, matching its witness scale.
  EXPECT_EQ(linear_rankwidth_exact(complete_binary_tree(2)), 1u);
  // Treewidth statistics grow with t while the witness width stays <= 2.
  std::size_t prev = 0;
  for (std::size_t t = 1; t <= 3; ++t) {
    FamilyInstance f = separating_family(2, t);
    std::size_t tw_ub = treewidth_minfill_ub(f.variable_graph).first;
    EXPECT_GE(tw_ub, prev);
    EXPECT_GE(tw_ub, t - 1);
    prev = tw_ub;
    EXPECT_LE(decomposition_width(f.variable_graph, f.witness), 2u);
  }
}

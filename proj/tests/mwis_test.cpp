// Copyright 2026 The ppsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ppsched/ppsched.hpp"
#include "test_support.hpp"

namespace ppsched {
namespace {

using testing::random_graph;
using testing::random_weights;
using testing::subset_maximal_sets;
using testing::subset_mwis;

Graph path3() {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

TEST(GraphTest, IgnoresLoopsAndDuplicates) {
  Graph g(3);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  EXPECT_EQ(g.edge_count(), 1);
  EXPECT_EQ(g.degree(0), 1);
  EXPECT_TRUE(g.adjacent(1, 0));
}

TEST(NodeSetTest, BasicOperations) {
  NodeSet a(130), b(130);
  a.set(0);
  a.set(64);
  a.set(129);
  b.set(64);
  EXPECT_EQ(a.count(), 3);
  EXPECT_TRUE(a.intersects(b));
  EXPECT_EQ(a.intersection_count(b), 1);
  EXPECT_EQ(a.first(), 0);
  EXPECT_EQ(a.next(0), 64);
  EXPECT_EQ(a.next(129), NodeSet::npos);
  a.subtract(b);
  EXPECT_EQ(a.to_vector(), (std::vector<int>{0, 129}));
  EXPECT_EQ(NodeSet::full(70).count(), 70);
}

TEST(ExactTest, EdgelessTakesAll) {
  const auto s = solve_exact(Graph(3), std::vector<double>{2, 3, 5});
  EXPECT_EQ(s.nodes, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(s.weight, 10);
}

TEST(ExactTest, PathTakesEnds) {
  const auto s = solve_exact(path3(), std::vector<double>{2, 3, 2});
  EXPECT_EQ(s.nodes, (std::vector<int>{0, 2}));
  EXPECT_EQ(s.weight, 4);
}

TEST(ExactTest, TiesPreferMoreNodesThenSmallerIds) {
  // {1} weighs 4 like {0, 2}; the larger set wins.
  EXPECT_EQ(solve_exact(path3(), std::vector<double>{2, 4, 2}).nodes, (std::vector<int>{0, 2}));
  // Unit 5-cycle: every maximum set has two nodes; {0, 2} is smallest.
  EXPECT_EQ(solve_exact(cycle(5), std::vector<double>(5, 1.0)).nodes, (std::vector<int>{0, 2}));
  EXPECT_EQ(solve_exact(cycle(5), std::vector<int>(5, 1)).nodes, (std::vector<int>{0, 2}));
}

TEST(ExactTest, RejectsNonPositiveAndMismatchedWeights) {
  EXPECT_THROW(solve_exact(path3(), std::vector<double>{1, 0, 1}), DomainError);
  EXPECT_THROW(solve_exact(path3(), std::vector<double>{1, 1}), Error);
}

TEST(ExactTest, NodeLimitRaisesResourceLimit) {
  std::mt19937_64 rng(3);
  const Graph g = random_graph(rng, 40, 0.2);
  SolverOptions opt;
  opt.exact_node_limit = 5;
  EXPECT_THROW(solve_exact(g, random_weights(rng, 40, false), opt), ResourceLimitError);
}

TEST(AmislTest, TriangleWithNegativeWeight) {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  const auto s = solve_amisl(g, std::vector<double>{1, -1, 2});
  EXPECT_EQ(s.nodes, (std::vector<int>{2}));
  EXPECT_EQ(s.weight, 2);
}

TEST(AmislTest, EdgelessKeepsNegativeMember) {
  const auto s = solve_amisl(Graph(3), std::vector<double>{1, -1, 2});
  EXPECT_EQ(s.nodes, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(s.weight, 2);
}

TEST(AmislTest, TiesPreferFewerNodes) {
  // Maximal sets {0, 2} and {1} both weigh 4.
  EXPECT_EQ(solve_amisl(path3(), std::vector<double>{2, 4, 2}).nodes, (std::vector<int>{1}));
}

TEST(AmislTest, CountsMaximalSetsAndHonoursCap) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(rng, 12, 0.3);
    SolverStats st;
    solve_amisl(g, random_weights(rng, 12, false), {}, &st);
    EXPECT_EQ(st.maximal_sets, subset_maximal_sets(g).size());
  }
  SolverOptions opt;
  opt.amisl_cap = 3;
  EXPECT_THROW(solve_amisl(cycle(9), std::vector<double>(9, 1.0), opt), ResourceLimitError);
}

TEST(AmislTest, BestOverMaximalSetsWithNegatives) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 10, 0.35);
    std::vector<double> w(10);
    for (auto& x : w) x = u(rng);
    double best = -1e300;
    std::size_t best_k = 0;
    for (const auto& s : subset_maximal_sets(g)) {
      double t = 0;
      for (int v : s) t += w[v];
      if (t > best + 1e-9 || (t > best - 1e-9 && s.size() < best_k)) {
        best = t;
        best_k = s.size();
      }
    }
    const auto got = solve_amisl(g, w);
    EXPECT_NEAR(got.weight, best, 1e-9);
    EXPECT_EQ(got.nodes.size(), best_k);
    EXPECT_TRUE(is_maximal_independent(g, got.nodes));
  }
}

TEST(GreedyTest, SingleNode) {
  EXPECT_EQ(solve_gwmin(Graph(1), std::vector<double>{7}).nodes, (std::vector<int>{0}));
  EXPECT_EQ(solve_gwmin2(Graph(1), std::vector<double>{7}).nodes, (std::vector<int>{0}));
}

TEST(GreedyTest, StarPrefersLeaves) {
  const auto s = solve_gwmin(star(3), std::vector<double>(4, 1.0));
  EXPECT_EQ(s.nodes, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(s.weight, 3);
  EXPECT_EQ(subset_mwis(star(3), std::vector<double>(4, 1.0)).weight, 3);
}

TEST(GreedyTest, Gwmin2TakesHeavierOfPair) {
  Graph g(2);
  g.add_edge(0, 1);
  EXPECT_EQ(solve_gwmin2(g, std::vector<double>{3, 1}).nodes, (std::vector<int>{0}));
  EXPECT_EQ(solve_gwmin2(g, std::vector<double>{1, 3}).nodes, (std::vector<int>{1}));
}

TEST(GreedyTest, ScoreTiesGoToHeavierThenSmallerId) {
  // Node 0: w 2, degree 1 -> 1. Node 2: w 1, degree 0 -> 1. Node 1: w 1, degree 1 -> 0.5.
  Graph g(3);
  g.add_edge(0, 1);
  const auto s = solve_gwmin(g, std::vector<double>{2, 1, 1});
  EXPECT_EQ(s.nodes, (std::vector<int>{0, 2}));
  EXPECT_EQ(solve_gwmin(Graph(2), std::vector<double>{1, 1}).nodes, (std::vector<int>{0, 1}));
}

TEST(DispatchTest, SolveChecksIndependence) {
  const Graph g = cycle(6);
  const std::vector<double> w(6, 1.0);
  for (SolverId id : {SolverId::kExact, SolverId::kAmisl, SolverId::kGwmin, SolverId::kGwmin2})
    EXPECT_TRUE(is_independent(g, solve(id, g, w).nodes));
  EXPECT_EQ(parse_solver("EXACT_MWIS"), SolverId::kExact);
  EXPECT_THROW(parse_solver("ilp"), ConfigError);
}

TEST(SolverPropertyTest, FiveHundredRandomGraphs) {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> size(1, 20);
  std::uniform_real_distribution<double> dens(0.05, 0.8);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = size(rng);
    const Graph g = random_graph(rng, n, dens(rng));
    const auto w = random_weights(rng, n, trial % 2 == 0);
    const auto ref = subset_mwis(g, w);
    const auto ex = solve_exact(g, w);
    ASSERT_NEAR(ex.weight, ref.weight, 1e-9) << "trial " << trial;
    ASSERT_EQ(ex.nodes, ref.nodes) << "trial " << trial;
    ASSERT_TRUE(is_independent(g, ex.nodes));
    const auto am = solve_amisl(g, w);
    ASSERT_NEAR(am.weight, ex.weight, 1e-9) << "trial " << trial;
    for (const auto& greedy : {solve_gwmin(g, w), solve_gwmin2(g, w)}) {
      ASSERT_TRUE(is_independent(g, greedy.nodes));
      ASSERT_TRUE(is_maximal_independent(g, greedy.nodes));
      ASSERT_LE(greedy.weight, ex.weight + 1e-9);
    }
  }
}

TEST(SolverPropertyTest, Deterministic) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(rng, 25, 0.3);
    const auto w = random_weights(rng, 25, true);
    for (SolverId id : {SolverId::kExact, SolverId::kAmisl, SolverId::kGwmin, SolverId::kGwmin2})
      EXPECT_EQ(solve(id, g, w).nodes, solve(id, g, w).nodes);
  }
}

TEST(SolverPropertyTest, ExactOnConflictGraphs) {
  // Scheduling-shaped graphs with many equal weights stress the tie-breaks.
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto inst = generate_random(testing::small_params(seed));
    const auto g = build_conflict_graph(inst);
    if (g.node_count() > 20) continue;
    std::vector<double> w(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) w[v] = 1 + g.node(v).unit_task % 3;
    Graph plain(g.node_count());
    for (int u = 0; u < g.node_count(); ++u)
      for (int v : g.neighbors(u)) plain.add_edge(u, v);
    const auto ref = subset_mwis(plain, w);
    const auto ex = solve_exact(g, w);
    EXPECT_EQ(ex.nodes, ref.nodes) << "seed " << seed;
  }
}

}  // namespace
}  // namespace ppsched

#include <gtest/gtest.h>

#include "ssspx/generator.hpp"
#include "ssspx/oracle.hpp"
#include "ssspx/solver.hpp"
#include "support/corpus.hpp"

namespace ssspx {
namespace {

TEST(Oracle, SingleVertex) {
  const Graph g(1, {});
  const OracleResult o = dijkstra(g, 0);
  EXPECT_EQ(o.labels[0], DistLabel::source(0));
  EXPECT_EQ(o.order, (std::vector<Vertex>{0}));
}

TEST(Oracle, Triangle) {
  // s=0, a=1, b=2.
  const Graph g(3, {{0, 1, 1}, {0, 2, 3}, {1, 2, 1}});
  const OracleResult o = dijkstra(g, 0);
  EXPECT_EQ(o.labels[2], (DistLabel{2.0, 2, 2, 1}));
}

TEST(Oracle, UnreachableStaysUnset) {
  const Graph g(3, {{0, 1, 1}});
  const OracleResult o = dijkstra(g, 0);
  EXPECT_TRUE(o.reachable(1));
  EXPECT_FALSE(o.reachable(2));
  EXPECT_EQ(o.order.size(), 2u);
}

TEST(Oracle, ExtractionOrderIsSortedAndChainsSum) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec spec;
    spec.n = 150;
    spec.m = 500;
    spec.weights.kind = static_cast<WeightKind>(seed % 3);
    spec.seed = seed;
    const Graph g = generate(spec);
    const OracleResult o = dijkstra(g, 0);
    for (std::size_t i = 1; i < o.order.size(); ++i) {
      EXPECT_TRUE(less(o.labels[o.order[i - 1]], o.labels[o.order[i]]));
    }
    for (const Vertex v : o.order) {
      const auto chain = pred_chain(o.labels, v);
      ASSERT_FALSE(chain.empty());
      EXPECT_EQ(chain.front(), 0u);
      EXPECT_EQ(chain.size(), o.labels[v].hops + 1);
      // Re-extend along the chain with the cheapest parallel arc.
      DistLabel d = DistLabel::source(0);
      for (std::size_t i = 1; i < chain.size(); ++i) {
        double best = -1;
        for (const Arc& a : g.out(chain[i - 1])) {
          if (a.to == chain[i] && (best < 0 || a.weight < best)) best = a.weight;
        }
        d = extend(d, chain[i], best);
      }
      EXPECT_EQ(d, o.labels[v]);
    }
  }
}

TEST(Oracle, TargetsWithInfiniteBoundAreAllReachable) {
  GenSpec spec;
  spec.n = 80;
  spec.m = 160;
  spec.seed = 4;
  const Graph g = generate(spec);
  const OracleResult o = dijkstra(g, 0);
  const std::vector<Vertex> s{0};
  auto all = o.order;
  std::sort(all.begin(), all.end());
  EXPECT_EQ(true_targets(o, Bound::infinity(), s), all);
}

TEST(Oracle, TargetsBelowZeroBoundAreEmpty) {
  const Graph g(3, {{0, 1, 0}, {1, 2, 0}});
  const OracleResult o = dijkstra(g, 0);
  const std::vector<Vertex> s{0};
  EXPECT_TRUE(true_targets(o, Bound::finite({0.0, 0, 0, kNoVertex}), s).empty());
}

TEST(Oracle, TargetsFollowCanonicalChains) {
  // 0 -> 1 -> 2 and 0 -> 3; only 1 and 2 pass through vertex 1.
  const Graph g(4, {{0, 1, 1}, {1, 2, 1}, {0, 3, 1}});
  const OracleResult o = dijkstra(g, 0);
  const std::vector<Vertex> s{1};
  EXPECT_EQ(true_targets(o, Bound::infinity(), s), (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(true_targets(o, Bound::finite(o.labels[2]), s), (std::vector<Vertex>{1}));
}

TEST(Oracle, MatchesSolverOnRandomGraphs) {
  SolverConfig cfg;
  cfg.allow_fallback = false;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    SplitMix64 rng(seed);
    const GenSpec spec =
        testing::random_spec(rng, 1, 60, 4, static_cast<WeightKind>(seed % 3));
    const Graph g = generate(spec);
    const OracleResult o = dijkstra(g, 0);
    const SolveResult r = solve(g, 0, cfg);
    for (Vertex v = 0; v < g.n(); ++v) {
      ASSERT_EQ(o.labels[v].length, r.dist[v]) << "seed " << seed << " vertex " << v;
    }
  }
}

}  // namespace
}  // namespace ssspx

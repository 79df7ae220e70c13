#include <gtest/gtest.h>

#include <limits>

#include "ssspx/generator.hpp"
#include "ssspx/graph.hpp"
#include "ssspx/oracle.hpp"

namespace ssspx {
namespace {

TEST(Graph, AcceptsValidEdge) {
  const Graph g(2, {{0, 1, 3.5}});
  EXPECT_EQ(g.n(), 2u);
  EXPECT_EQ(g.m(), 1u);
  ASSERT_EQ(g.out(0).size(), 1u);
  EXPECT_EQ(g.out(0)[0].to, 1u);
  EXPECT_EQ(g.out(0)[0].weight, 3.5);
  EXPECT_EQ(g.out_degree(1), 0u);
}

TEST(Graph, RejectsNegativeWeight) {
  try {
    Graph g(2, {{0, 1, -1.0}});
    FAIL();
  } catch (const GraphError& e) {
    EXPECT_EQ(e.kind(), GraphError::Kind::negative_weight);
    EXPECT_EQ(e.edge_index(), 0u);
  }
}

TEST(Graph, RejectsOutOfRangeVertex) {
  try {
    Graph g(2, {{0, 1, 1.0}, {0, 5, 1.0}});
    FAIL();
  } catch (const GraphError& e) {
    EXPECT_EQ(e.kind(), GraphError::Kind::vertex_out_of_range);
    EXPECT_EQ(e.edge_index(), 1u);
  }
}

TEST(Graph, RejectsNonFiniteWeight) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Graph(2, {{0, 1, inf}}), GraphError);
  EXPECT_THROW(Graph(2, {{0, 1, std::numeric_limits<double>::quiet_NaN()}}), GraphError);
}

TEST(Graph, OutListsKeepInputOrder) {
  const Graph g(3, {{0, 2, 1}, {1, 0, 1}, {0, 1, 2}});
  ASSERT_EQ(g.out(0).size(), 2u);
  EXPECT_EQ(g.out(0)[0].id, 0u);
  EXPECT_EQ(g.out(0)[1].id, 2u);
  EXPECT_EQ(g.in_degrees(), (std::vector<std::uint32_t>{1, 1, 1}));
}

TEST(ReduceDegree, IsolatedVertexStaysSingle) {
  const Graph g(1, {});
  for (std::uint32_t delta : {3u, 4u, 7u}) {
    const ReducedGraph r = reduce_degree(g, delta);
    EXPECT_EQ(r.inner.n(), 1u);
    EXPECT_EQ(r.inner.m(), 0u);
  }
}

TEST(ReduceDegree, StarCenterBecomesCycle) {
  // Center 0 with total degree 5.
  const Graph g(6, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {4, 0, 1}, {5, 0, 1}});
  const ReducedGraph r = reduce_degree(g, 3);
  std::uint32_t center_size = 0;
  for (Vertex x = 0; x < r.inner.n(); ++x) center_size += r.origin[x] == 0 ? 1 : 0;
  EXPECT_EQ(center_size, 5u);
  std::uint32_t zero_cycle_edges = 0;
  for (const Edge& e : r.inner.edges()) {
    if (r.origin[e.src] == 0 && r.origin[e.dst] == 0) {
      EXPECT_EQ(e.weight, 0.0);
      ++zero_cycle_edges;
    }
  }
  EXPECT_EQ(zero_cycle_edges, 5u);
  EXPECT_EQ(r.inner.n(), 10u);
  EXPECT_EQ(r.inner.m(), 5u + 5u);
}

TEST(ReduceDegree, RejectsSmallDelta) {
  const Graph g(2, {{0, 1, 1}});
  EXPECT_THROW(reduce_degree(g, 2), GraphError);
}

TEST(ReduceDegree, DegreeBoundAndDistancesOnRandomGraphs) {
  for (std::uint32_t delta : {3u, 4u, 5u, 8u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      GenSpec spec;
      spec.n = 50;
      spec.m = 200;
      spec.seed = seed;
      spec.weights.kind = seed % 2 ? WeightKind::zero_heavy : WeightKind::uniform_real;
      const Graph g = generate(spec);
      const ReducedGraph r = reduce_degree(g, delta);
      const DegreeSummary ds = degree_summary(r.inner);
      EXPECT_LE(ds.max_in, delta);
      EXPECT_LE(ds.max_out, delta);
      EXPECT_LE(r.inner.n(), 2 * g.m() / (delta - 2) + g.n());
      for (Vertex s : {0u, 17u}) {
        const OracleResult a = dijkstra(g, s);
        const OracleResult b = dijkstra(r, s);
        for (Vertex v = 0; v < g.n(); ++v) {
          EXPECT_EQ(a.reachable(v), b.reachable(r.rep[v]));
          if (a.reachable(v)) {
            EXPECT_EQ(a.labels[v].length, b.labels[r.rep[v]].length);
          }
        }
      }
    }
  }
}

TEST(ReduceDegree, OriginAndRepAgree) {
  GenSpec spec;
  spec.n = 30;
  spec.m = 90;
  const Graph g = generate(spec);
  const ReducedGraph r = reduce_degree(g, 4);
  for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(r.origin[r.rep[v]], v);
  std::size_t crossing = 0;
  for (const Edge& e : r.inner.edges()) crossing += r.origin[e.src] != r.origin[e.dst] ? 1 : 0;
  EXPECT_EQ(crossing, g.m());
}

}  // namespace
}  // namespace ssspx

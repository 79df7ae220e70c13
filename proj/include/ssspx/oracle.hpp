#pragma once

#include <span>
#include <vector>

#include "ssspx/graph.hpp"
#include "ssspx/labels.hpp"

namespace ssspx {

// Reference Dijkstra over the shared label algebra. Unreached vertices keep
// an unset label (length +inf).
struct OracleResult {
  std::vector<DistLabel> labels;
  std::vector<Vertex> order;  // extraction order, non-decreasing labels

  bool reachable(Vertex v) const;
};

OracleResult dijkstra(const Graph& g, Vertex source);
OracleResult dijkstra(const ReducedGraph& g, Vertex original_source);

// Vertices v with dis(v) < bound whose canonical shortest pred-chain meets
// `sources`. The result is sorted ascending.
std::vector<Vertex> true_targets(const OracleResult& oracle, const Bound& bound,
                                 std::span<const Vertex> sources);

}  // namespace ssspx

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ssspx/graph.hpp"
#include "ssspx/indexed_heap.hpp"
#include "ssspx/labels.hpp"

namespace ssspx {

struct PivotGroup {
  std::vector<Vertex> members;                        // P_j
  std::vector<Vertex> subtree;                        // vertices of F_j, root first
  std::vector<std::pair<Vertex, Vertex>> tree_edges;  // edges of F_j as (parent, child)
};

struct PivotOutput {
  std::vector<PivotGroup> groups;  // non-empty P_j only
  std::vector<Vertex> q;           // roots of the arborescences W_j
  std::vector<Vertex> w;           // union of all W_j, without repeats
  std::size_t forest_trees = 0;    // number of grown trees before partitioning
  std::size_t subtrees = 0;        // partitioned subtrees, including those with empty P_j
  std::uint64_t heap_ops = 0;
  std::uint64_t relaxations = 0;
  std::uint64_t valid_relaxations = 0;
};

// Per-vertex tags reused across calls. Each call bumps an epoch instead of
// clearing, so a tag from an earlier call never matches.
class PivotScratch {
 public:
  explicit PivotScratch(std::size_t n = 0);
  void resize(std::size_t n);

 private:
  friend PivotOutput find_pivots(const Bound&, std::span<const Vertex>, std::uint32_t,
                                 LabelStore&, const Graph&, PivotScratch&, OpCounter&);

  std::uint32_t next_epoch();
  std::uint32_t next_search();

  std::uint32_t epoch_ = 0;
  std::uint32_t search_ = 0;
  std::vector<std::uint32_t> in_tree_;   // == epoch_: vertex belongs to a grown tree
  std::vector<std::uint32_t> tree_id_;
  std::vector<std::uint32_t> local_id_;
  std::vector<std::uint32_t> in_k_;      // == search serial: vertex is in the current K
  std::vector<Vertex> k_parent_;
  std::vector<std::uint32_t> in_s_;
  std::vector<std::uint32_t> in_q_;
  std::vector<std::uint32_t> in_w_;
  std::vector<std::uint32_t> assigned_;
  IndexedHeap heap_;
};

// Local bounded Dijkstra searches from S, then partition of the grown trees
// into subtrees of size in [k, 3k). Labels are relaxed in place against B.
PivotOutput find_pivots(const Bound& bound, std::span<const Vertex> frontier, std::uint32_t k,
                        LabelStore& labels, const Graph& g, PivotScratch& scratch,
                        OpCounter& ops);

}  // namespace ssspx

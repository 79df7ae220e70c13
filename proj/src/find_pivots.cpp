#include "ssspx/find_pivots.hpp"

#include <algorithm>
#include <stdexcept>

#include "ssspx/tree_partition.hpp"

namespace ssspx {

PivotScratch::PivotScratch(std::size_t n) { resize(n); }

void PivotScratch::resize(std::size_t n) {
  epoch_ = 0;
  search_ = 0;
  in_tree_.assign(n, 0);
  tree_id_.assign(n, 0);
  local_id_.assign(n, 0);
  in_k_.assign(n, 0);
  k_parent_.assign(n, kNoVertex);
  in_s_.assign(n, 0);
  in_q_.assign(n, 0);
  in_w_.assign(n, 0);
  assigned_.assign(n, 0);
  heap_.resize(n);
}

std::uint32_t PivotScratch::next_epoch() {
  if (++epoch_ == 0) {
    for (auto* tags : {&in_tree_, &in_s_, &in_q_, &in_w_, &assigned_}) {
      std::fill(tags->begin(), tags->end(), 0);
    }
    epoch_ = 1;
  }
  return epoch_;
}

std::uint32_t PivotScratch::next_search() {
  if (++search_ == 0) {
    std::fill(in_k_.begin(), in_k_.end(), 0);
    search_ = 1;
  }
  return search_;
}

namespace {

struct GrownTree {
  std::vector<Vertex> vertices;  // first-discovered vertex first
  std::vector<std::pair<Vertex, Vertex>> edges;
};

}  // namespace

PivotOutput find_pivots(const Bound& bound, std::span<const Vertex> frontier, std::uint32_t k,
                        LabelStore& labels, const Graph& g, PivotScratch& sc, OpCounter& ops) {
  if (k == 0) throw std::invalid_argument("find_pivots: k must be positive");
  PivotOutput out;
  const std::uint32_t epoch = sc.next_epoch();
  const std::uint64_t heap_ops_before = sc.heap_.heap_ops();
  sc.heap_.set_counter(&ops);

  std::vector<GrownTree> trees;
  std::vector<Vertex> k_set;

  for (const Vertex x : frontier) {
    if (sc.in_s_[x] == epoch) continue;
    sc.in_s_[x] = epoch;
    if (sc.in_tree_[x] == epoch) continue;

    const std::uint32_t serial = sc.next_search();
    k_set.clear();
    k_set.push_back(x);
    sc.in_k_[x] = serial;
    sc.k_parent_[x] = kNoVertex;
    sc.heap_.push(x, labels[x]);
    bool merged = false;

    while (!merged && !sc.heap_.empty() && k_set.size() < k) {
      const Vertex u = sc.heap_.pop().first;
      for (const Arc& arc : g.out(u)) {
        ++out.relaxations;
        const RelaxOutcome r = labels.relax(u, arc.to, arc.weight, bound, ops);
        if (r == RelaxOutcome::rejected) continue;
        ++out.valid_relaxations;
        const Vertex v = arc.to;
        if (sc.in_tree_[v] == epoch) {
          // Attach K to the existing tree through (u, v). K shares no vertex
          // with that tree, so the union stays a tree when edges are read
          // as undirected.
          GrownTree& t = trees[sc.tree_id_[v]];
          const std::uint32_t id = sc.tree_id_[v];
          for (const Vertex y : k_set) {
            sc.in_tree_[y] = epoch;
            sc.tree_id_[y] = id;
            t.vertices.push_back(y);
            if (y != x) t.edges.emplace_back(sc.k_parent_[y], y);
          }
          t.edges.emplace_back(u, v);
          merged = true;
          break;
        }
        if (sc.in_k_[v] == serial) {
          if (r == RelaxOutcome::improved) {
            sc.k_parent_[v] = u;
            sc.heap_.push_or_decrease(v, labels[v]);
          }
        } else {
          sc.in_k_[v] = serial;
          sc.k_parent_[v] = u;
          k_set.push_back(v);
          sc.heap_.push(v, labels[v]);
        }
      }
    }
    sc.heap_.clear();
    if (merged) continue;

    if (k_set.size() >= k) {
      const auto id = static_cast<std::uint32_t>(trees.size());
      GrownTree& t = trees.emplace_back();
      for (const Vertex y : k_set) {
        sc.in_tree_[y] = epoch;
        sc.tree_id_[y] = id;
        t.vertices.push_back(y);
        if (y != x) t.edges.emplace_back(sc.k_parent_[y], y);
      }
    } else {
      out.q.push_back(x);
      sc.in_q_[x] = epoch;
      for (const Vertex y : k_set) {
        if (sc.in_w_[y] == epoch) continue;
        sc.in_w_[y] = epoch;
        out.w.push_back(y);
      }
    }
  }

  out.forest_trees = trees.size();
  for (const GrownTree& t : trees) {
    RootedTree local;
    local.size = static_cast<std::uint32_t>(t.vertices.size());
    local.root = 0;
    for (std::uint32_t i = 0; i < local.size; ++i) sc.local_id_[t.vertices[i]] = i;
    local.edges.reserve(t.edges.size());
    for (const auto& [a, b] : t.edges) local.edges.emplace_back(sc.local_id_[a], sc.local_id_[b]);

    TreePartition parts = partition_tree(local, k);
    out.subtrees += parts.groups.size();
    for (const TreeGroup& part : parts.groups) {
      PivotGroup group;
      for (const std::uint32_t lv : part.vertices) {
        const Vertex v = t.vertices[lv];
        group.subtree.push_back(v);
        if (sc.in_s_[v] == epoch && sc.in_q_[v] != epoch && sc.assigned_[v] != epoch) {
          sc.assigned_[v] = epoch;
          group.members.push_back(v);
        }
      }
      if (group.members.empty()) continue;
      group.tree_edges.reserve(part.edges.size());
      for (const auto& [a, b] : part.edges) {
        group.tree_edges.emplace_back(t.vertices[a], t.vertices[b]);
      }
      out.groups.push_back(std::move(group));
    }
  }
  out.heap_ops = sc.heap_.heap_ops() - heap_ops_before;
  return out;
}

}  // namespace ssspx

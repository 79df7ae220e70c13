#pragma once

// Independent checks for partition_tree output and random tree builders.

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ssspx/generator.hpp"
#include "ssspx/tree_partition.hpp"

namespace ssspx::testing {

enum class TreeShape { random_recursive, path, star, caterpillar, binary };

inline RootedTree make_tree(TreeShape shape, std::uint32_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::uint32_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  RootedTree t;
  t.size = n;
  for (std::uint32_t i = 1; i < n; ++i) {
    std::uint32_t parent = 0;
    switch (shape) {
      case TreeShape::random_recursive: parent = static_cast<std::uint32_t>(rng.below(i)); break;
      case TreeShape::path: parent = i - 1; break;
      case TreeShape::star: parent = 0; break;
      case TreeShape::caterpillar: parent = i % 2 == 1 ? (i > 1 ? i - 2 : 0) : i - 1; break;
      case TreeShape::binary: parent = (i - 1) / 2; break;
    }
    if (rng.below(2)) {
      t.edges.emplace_back(perm[parent], perm[i]);
    } else {
      t.edges.emplace_back(perm[i], perm[parent]);
    }
  }
  for (std::uint32_t i = n; i > 1 && !t.edges.empty(); --i) {
    std::swap(t.edges[i - 2], t.edges[rng.below(i - 1)]);
  }
  t.root = n == 0 ? 0 : perm[rng.below(n)];
  return t;
}

// Empty string when the partition is valid: every group is connected by its
// own edges, sizes lie in [s, 3s) (or the whole tree when n < s), groups
// share no edge, and together they cover every tree edge exactly once.
inline std::string check_partition(const RootedTree& t, std::uint32_t s, const TreePartition& p) {
  std::ostringstream err;
  std::set<std::pair<std::uint32_t, std::uint32_t>> tree_edges;
  for (auto [a, b] : t.edges) tree_edges.insert({std::min(a, b), std::max(a, b)});
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::uint64_t edge_sum = 0;
  std::vector<char> covered(t.size, 0);
  for (std::size_t j = 0; j < p.groups.size(); ++j) {
    const TreeGroup& g = p.groups[j];
    const std::size_t size = g.vertices.size();
    const bool whole = p.groups.size() == 1 && size == t.size;
    if (!whole && (size < s || size >= 3ull * s)) {
      err << "group " << j << " has size " << size;
      return err.str();
    }
    if (g.edges.size() + 1 != size) {
      err << "group " << j << " is not a tree";
      return err.str();
    }
    std::set<std::uint32_t> members(g.vertices.begin(), g.vertices.end());
    if (members.size() != size) return "repeated vertex in a group";
    // Union-find over the group's edges.
    std::vector<std::uint32_t> ids(g.vertices.begin(), g.vertices.end());
    std::sort(ids.begin(), ids.end());
    std::vector<std::uint32_t> parent(size);
    std::iota(parent.begin(), parent.end(), 0u);
    auto idx = [&](std::uint32_t v) {
      return static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
    };
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [a, b] : g.edges) {
      if (!members.count(a) || !members.count(b)) return "group edge leaves its group";
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      if (!tree_edges.count(key)) return "group edge is not a tree edge";
      if (!seen.insert(key).second) return "edge appears in two groups";
      parent[find(idx(a))] = find(idx(b));
    }
    for (std::uint32_t i = 1; i < size; ++i) {
      if (find(i) != find(0)) return "group is disconnected";
    }
    for (auto v : g.vertices) covered[v] = 1;
    edge_sum += size - 1;
  }
  if (edge_sum + 1 != t.size && !(t.size == 0 && p.groups.empty())) {
    err << "sum of (|T_j| - 1) is " << edge_sum << ", expected " << t.size - 1;
    return err.str();
  }
  if (seen.size() != tree_edges.size()) return "tree edge not covered";
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) return "vertex not covered";
  return {};
}

}  // namespace ssspx::testing

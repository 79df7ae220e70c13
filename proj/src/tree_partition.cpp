#include "ssspx/tree_partition.hpp"

#include <string>

namespace ssspx {

namespace {

constexpr std::uint32_t kNil = 0xFFFFFFFFu;

// Singly linked vertex list; `root` marks a node created by U <- {r}, which
// carries no parent edge.
struct Node {
  std::uint32_t vertex;
  std::uint32_t next;
  bool root;
};

struct List {
  std::uint32_t head = kNil;
  std::uint32_t tail = kNil;
  std::uint32_t size = 0;
};

struct Frame {
  std::uint32_t v;
  std::uint32_t parent;
  std::uint32_t cursor;
  List u;
};

void fail_tree(const std::string& what) {
  throw TreePartitionError(TreePartitionError::Kind::invalid_tree, what);
}

}  // namespace

TreePartition partition_tree(const RootedTree& tree, std::uint32_t s) {
  const std::uint32_t n = tree.size;
  if (s < 1 || s > n) {
    throw TreePartitionError(TreePartitionError::Kind::invalid_size,
                             "group size " + std::to_string(s) + " outside [1, " +
                                 std::to_string(n) + "]");
  }
  if (tree.root >= n) fail_tree("root out of range");
  if (tree.edges.size() + 1 != n) fail_tree("a tree on n vertices needs n - 1 edges");

  TreePartition out;
  std::uint64_t& ops = out.ops;

  // Undirected adjacency, sorted by neighbor id via two stable counting passes.
  const std::size_t half_edges = 2 * tree.edges.size();
  std::vector<std::uint32_t> from(half_edges);
  std::vector<std::uint32_t> to(half_edges);
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    const auto [a, b] = tree.edges[i];
    if (a >= n || b >= n) fail_tree("edge endpoint out of range");
    if (a == b) fail_tree("self-loop in tree");
    from[2 * i] = a;
    to[2 * i] = b;
    from[2 * i + 1] = b;
    to[2 * i + 1] = a;
  }
  ops += half_edges;
  std::vector<std::uint32_t> count(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint32_t> by_to(half_edges);
  for (std::size_t i = 0; i < half_edges; ++i) ++count[to[i] + 1];
  for (std::uint32_t v = 0; v < n; ++v) count[v + 1] += count[v];
  for (std::size_t i = 0; i < half_edges; ++i) by_to[count[to[i]]++] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> offset(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < half_edges; ++i) ++offset[from[i] + 1];
  for (std::uint32_t v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<std::uint32_t> adj(half_edges);
  {
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (std::uint32_t i : by_to) adj[fill[from[i]]++] = to[i];
  }
  ops += 2 * half_edges + 2 * static_cast<std::uint64_t>(n);

  std::vector<Node> nodes;
  nodes.reserve(2 * static_cast<std::size_t>(n));
  auto singleton = [&](std::uint32_t v) {
    nodes.push_back({v, kNil, true});
    const auto id = static_cast<std::uint32_t>(nodes.size() - 1);
    return List{id, id, 1};
  };
  auto concat = [](std::vector<Node>& pool, List& a, const List& b) {
    pool[a.tail].next = b.head;
    a.tail = b.tail;
    a.size += b.size;
  };

  std::vector<std::uint32_t> parent(n, kNil);
  std::vector<bool> seen(n, false);
  std::vector<List> reported;
  std::vector<std::uint32_t> reported_root;
  List residue;

  std::vector<Frame> stack;
  stack.push_back({tree.root, kNil, offset[tree.root], singleton(tree.root)});
  seen[tree.root] = true;
  std::uint32_t visited = 1;
  while (!stack.empty()) {
    ++ops;
    Frame& top = stack.back();
    if (top.cursor < offset[top.v + 1]) {
      const std::uint32_t w = adj[top.cursor++];
      if (w == top.parent) continue;
      if (seen[w]) fail_tree("cycle in tree");
      seen[w] = true;
      ++visited;
      parent[w] = top.v;
      const std::uint32_t v = top.v;
      stack.push_back({w, v, offset[w], singleton(w)});
      continue;
    }
    const List done = top.u;
    stack.pop_back();
    if (stack.empty()) {
      residue = done;
      break;
    }
    // The returned list carries the child's edge to its parent.
    nodes[done.head].root = false;
    Frame& up = stack.back();
    concat(nodes, up.u, done);
    ++ops;
    if (up.u.size >= s) {
      reported.push_back(up.u);
      reported_root.push_back(up.v);
      up.u = singleton(up.v);
      ops += 2;
    }
  }
  if (visited != n) fail_tree("tree is not connected");

  // The residue joins the last group; its copy of that group's root is dropped.
  std::uint32_t skip_vertex = kNil;
  if (reported.empty()) {
    reported.push_back(residue);
  } else {
    skip_vertex = reported_root.back();
  }

  out.groups.resize(reported.size());
  for (std::size_t j = 0; j < reported.size(); ++j) {
    TreeGroup& g = out.groups[j];
    auto emit = [&](const List& list, bool dedupe) {
      for (std::uint32_t id = list.head; id != kNil; id = nodes[id].next) {
        ++ops;
        const Node& node = nodes[id];
        if (!(dedupe && node.vertex == skip_vertex)) g.vertices.push_back(node.vertex);
        if (!node.root) g.edges.emplace_back(parent[node.vertex], node.vertex);
        if (id == list.tail) break;
      }
    };
    emit(reported[j], false);
    if (j + 1 == reported.size() && skip_vertex != kNil) emit(residue, true);
  }
  return out;
}

}  // namespace ssspx

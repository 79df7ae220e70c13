#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ssspx {

class TreePartitionError : public std::invalid_argument {
 public:
  enum class Kind { invalid_size, invalid_tree };

  TreePartitionError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A tree on local ids [0, size). Edge direction is ignored.
struct RootedTree {
  std::uint32_t size = 0;
  std::uint32_t root = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

struct TreeGroup {
  std::vector<std::uint32_t> vertices;  // vertices[0] is the group root
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (parent, child)
};

struct TreePartition {
  std::vector<TreeGroup> groups;  // DFS completion order
  std::uint64_t ops = 0;          // elementary steps, for the linear-time audit
};

// Splits the tree into edge-disjoint connected groups with |T_j| in [s, 3s).
// Children are visited in ascending id order.
TreePartition partition_tree(const RootedTree& tree, std::uint32_t s);

}  // namespace ssspx

#pragma once

// Partial-sorting frontier container: an ordered tree of blocks whose
// intervals partition [minimal, B), each block an unsorted bag of at most M
// key/value pairs. Insert and Pull touch O(1) blocks; Merge accepts a
// structure whose values all precede ours and splices it in by whole blocks.
//
// With M == 1 the container degrades to an ordered map (base case use).

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ssspx/labels.hpp"

namespace ssspx {

class BlockStructureError : public std::logic_error {
 public:
  enum class Kind { invalid_parameter, merge_precondition_violated, unsupported, invariant };

  BlockStructureError(Kind kind, const std::string& what) : std::logic_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct KeyValue {
  Vertex key;
  DistLabel value;
};

struct PullResult {
  std::vector<Vertex> keys;
  Bound separator;
};

// Work tallies used for the amortized-cost budgets.
struct BlockStats {
  std::uint64_t inserts = 0;
  std::uint64_t merged_elements = 0;
  std::uint64_t merges = 0;
  std::uint64_t pulls = 0;
  std::uint64_t pulled_elements = 0;
  std::uint64_t tree_ops = 0;  // find / insert / erase on the block tree
  std::uint64_t moves = 0;     // element relocations (splits, joins, pulls, merges)
  std::uint64_t splits = 0;
  std::uint64_t joins = 0;
};

// Values of distinct keys must be distinct; this holds when value.curr == key.
class BlockList {
 public:
  BlockList(std::size_t block_size, Bound upper, OpCounter* ops, bool debug_checks);

  BlockList(BlockList&&) noexcept = default;
  BlockList& operator=(BlockList&&) noexcept = default;

  std::size_t block_size() const { return m_; }
  const Bound& upper() const { return upper_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::size_t block_count() const { return blocks_.size(); }
  const BlockStats& stats() const { return stats_; }

  void insert(Vertex key, const DistLabel& value);
  PullResult pull();
  // Ascending runs: every value of run i precedes every value of run i + 1.
  // Leaves the structure empty.
  std::vector<std::vector<KeyValue>> drain_runs();
  // Bulk insert of ascending runs whose values all precede ours.
  void merge_runs(std::vector<std::vector<KeyValue>> runs, std::size_t source_block_size);

  bool contains(Vertex key) const { return locator_.count(key) != 0; }
  const DistLabel* find(Vertex key) const;
  std::vector<KeyValue> entries() const;  // block order, unsorted within blocks
  std::vector<std::size_t> block_sizes() const;

  // Throws BlockStructureError(invariant) on any violation.
  void check_invariants() const;

 private:
  struct Block {
    DistLabel lower;
    std::vector<KeyValue> items;
  };
  struct Loc {
    Block* block;
    std::uint32_t slot;
  };
  using Tree = std::map<DistLabel, std::unique_ptr<Block>, CountingLess>;

  Block* block_for(const DistLabel& value);
  Block* add_block(const DistLabel& lower);
  void rekey(Block* b, const DistLabel& lower);
  void erase_block(Block* b);
  Tree::iterator find_block(Block* b);
  void remove_entry(Vertex key);
  void append(Block* b, const KeyValue& kv);
  void reindex(Block* b);
  void split_oversized(Block* b);
  void join_undersized(Block* b);
  bool undersized(const Block* b) const { return b->items.size() * 3 < m_; }
  void reset();

  std::size_t m_;
  Bound upper_;
  OpCounter* ops_;
  bool debug_;
  std::size_t count_ = 0;
  Tree blocks_;
  std::unordered_map<Vertex, Loc> locator_;
  BlockStats stats_;
};

// Ordered map for M == 1: pull returns the single smallest key.
class BaseMap {
 public:
  BaseMap(Bound upper, OpCounter* ops);

  BaseMap(BaseMap&&) noexcept = default;
  BaseMap& operator=(BaseMap&&) noexcept = default;

  const Bound& upper() const { return upper_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const BlockStats& stats() const { return stats_; }

  void insert(Vertex key, const DistLabel& value);
  // Returns the smallest key; the separator is the new minimum or the upper bound.
  PullResult pull();
  const DistLabel& min_value() const { return order_.begin()->first; }
  std::vector<std::vector<KeyValue>> drain_runs();

  bool contains(Vertex key) const { return values_.count(key) != 0; }
  const DistLabel* find(Vertex key) const;
  std::vector<KeyValue> entries() const;  // ascending
  void check_invariants() const;

 private:
  struct EntryLess {
    OpCounter* ops;
    bool operator()(const std::pair<DistLabel, Vertex>& a,
                    const std::pair<DistLabel, Vertex>& b) const {
      if (ops != nullptr) ++ops->comparisons;
      return compare(a.first, b.first) == Order::less;
    }
  };

  Bound upper_;
  OpCounter* ops_;
  std::set<std::pair<DistLabel, Vertex>, EntryLess> order_;
  std::unordered_map<Vertex, DistLabel> values_;
  BlockStats stats_;
};

// The structure handed between recursion frames: BaseMap when M == 1,
// BlockList otherwise.
class BlockStructure {
 public:
  // N_hint == 0 skips the M >= log2(N/M) cost precondition.
  static BlockStructure create(std::size_t block_size, Bound upper, std::size_t n_hint = 0,
                               OpCounter* ops = nullptr, bool debug_checks = false);

  std::size_t block_size() const;
  const Bound& upper() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_base_map() const { return std::holds_alternative<BaseMap>(impl_); }
  const BlockStats& stats() const;

  void insert(Vertex key, const DistLabel& value);
  // Consumes `other`; every value there must precede every value here, and
  // a block-list source needs block_size < this block_size / 3.
  void merge(BlockStructure&& other);
  PullResult pull();

  bool contains(Vertex key) const;
  const DistLabel* find(Vertex key) const;
  std::vector<KeyValue> entries() const;
  void check_invariants() const;

  const BlockList* as_block_list() const { return std::get_if<BlockList>(&impl_); }
  const BaseMap* as_base_map() const { return std::get_if<BaseMap>(&impl_); }

 private:
  explicit BlockStructure(std::variant<BlockList, BaseMap> impl, bool debug)
      : impl_(std::move(impl)), debug_(debug) {}

  std::variant<BlockList, BaseMap> impl_;
  bool debug_;
};

}  // namespace ssspx

#include "ssspx/block_structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ssspx {

namespace {

// Lower key of the first block; precedes every real label.
const DistLabel kMinimal{-std::numeric_limits<double>::infinity(), 0, 0, kNoVertex};

void invariant(bool ok, const std::string& what) {
  if (!ok) throw BlockStructureError(BlockStructureError::Kind::invariant, what);
}

}  // namespace

// ---------------------------------------------------------------------------
// BlockList
// ---------------------------------------------------------------------------

BlockList::BlockList(std::size_t block_size, Bound upper, OpCounter* ops, bool debug_checks)
    : m_(block_size), upper_(upper), ops_(ops), debug_(debug_checks), blocks_(CountingLess{ops}) {
  reset();
}

void BlockList::reset() {
  blocks_.clear();
  locator_.clear();
  count_ = 0;
  add_block(kMinimal);
}

BlockList::Block* BlockList::add_block(const DistLabel& lower) {
  auto block = std::make_unique<Block>();
  block->lower = lower;
  Block* raw = block.get();
  blocks_.emplace(lower, std::move(block));
  ++stats_.tree_ops;
  return raw;
}

BlockList::Tree::iterator BlockList::find_block(Block* b) {
  ++stats_.tree_ops;
  return blocks_.find(b->lower);
}

void BlockList::erase_block(Block* b) { blocks_.erase(find_block(b)); }

void BlockList::rekey(Block* b, const DistLabel& lower) {
  auto node = blocks_.extract(find_block(b));
  node.key() = lower;
  b->lower = lower;
  blocks_.insert(std::move(node));
  ++stats_.tree_ops;
}

BlockList::Block* BlockList::block_for(const DistLabel& value) {
  ++stats_.tree_ops;
  auto it = blocks_.upper_bound(value);
  --it;
  return it->second.get();
}

void BlockList::append(Block* b, const KeyValue& kv) {
  b->items.push_back(kv);
  locator_[kv.key] = {b, static_cast<std::uint32_t>(b->items.size() - 1)};
  ++count_;
}

void BlockList::reindex(Block* b) {
  for (std::uint32_t i = 0; i < b->items.size(); ++i) locator_[b->items[i].key] = {b, i};
}

void BlockList::remove_entry(Vertex key) {
  auto it = locator_.find(key);
  Block* b = it->second.block;
  const std::uint32_t slot = it->second.slot;
  locator_.erase(it);
  if (slot + 1 != b->items.size()) {
    b->items[slot] = b->items.back();
    locator_[b->items[slot].key].slot = slot;
  }
  b->items.pop_back();
  --count_;
  join_undersized(b);
}

void BlockList::split_oversized(Block* b) {
  CountingLess less_label{ops_};
  auto by_value = [&](const KeyValue& a, const KeyValue& c) { return less_label(a.value, c.value); };
  while (b->items.size() > m_) {
    const std::size_t mid = b->items.size() / 2;
    std::nth_element(b->items.begin(), b->items.begin() + mid, b->items.end(), by_value);
    Block* upper_half = add_block(b->items[mid].value);
    upper_half->items.assign(b->items.begin() + mid, b->items.end());
    b->items.resize(mid);
    stats_.moves += b->items.size() + upper_half->items.size();
    ++stats_.splits;
    reindex(b);
    reindex(upper_half);
    split_oversized(upper_half);
  }
}

void BlockList::join_undersized(Block* b) {
  if (blocks_.size() <= 1 || !undersized(b)) return;
  auto it = find_block(b);
  auto next = std::next(it);
  Block* lo = b;
  Block* hi = nullptr;
  if (next != blocks_.end()) {
    hi = next->second.get();
  } else {
    lo = std::prev(it)->second.get();
    hi = b;
  }
  for (const KeyValue& kv : hi->items) {
    lo->items.push_back(kv);
    locator_[kv.key] = {lo, static_cast<std::uint32_t>(lo->items.size() - 1)};
  }
  stats_.moves += hi->items.size();
  ++stats_.joins;
  erase_block(hi);
  split_oversized(lo);
}

void BlockList::insert(Vertex key, const DistLabel& value) {
  ++stats_.inserts;
  if (!less(value, upper_)) {
    throw BlockStructureError(BlockStructureError::Kind::invalid_parameter,
                              "inserted value is not below the structure bound");
  }
  if (auto it = locator_.find(key); it != locator_.end()) {
    const DistLabel& old = it->second.block->items[it->second.slot].value;
    if (ops_ != nullptr) ++ops_->comparisons;
    if (!less(value, old)) return;
    remove_entry(key);
  }
  Block* b = block_for(value);
  append(b, {key, value});
  split_oversized(b);
}

PullResult BlockList::pull() {
  ++stats_.pulls;
  PullResult out;
  if (count_ <= m_) {
    out.keys.reserve(count_);
    for (const auto& [lower, block] : blocks_) {
      for (const KeyValue& kv : block->items) out.keys.push_back(kv.key);
    }
    stats_.moves += count_;
    stats_.pulled_elements += count_;
    out.separator = upper_;
    reset();
    return out;
  }

  std::vector<KeyValue> collected;
  collected.reserve(2 * m_);
  while (collected.size() < m_ + 1) {
    auto it = blocks_.begin();
    ++stats_.tree_ops;
    collected.insert(collected.end(), it->second->items.begin(), it->second->items.end());
    stats_.moves += it->second->items.size();
    blocks_.erase(it);
  }
  CountingLess less_label{ops_};
  std::nth_element(collected.begin(), collected.begin() + m_, collected.end(),
                   [&](const KeyValue& a, const KeyValue& b) { return less_label(a.value, b.value); });
  out.separator = Bound::finite(collected[m_].value);
  out.keys.reserve(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    out.keys.push_back(collected[i].key);
    locator_.erase(collected[i].key);
  }
  count_ -= m_;
  stats_.pulled_elements += m_;

  // The leftover joins the new smallest block, which takes over the minimal key.
  Block* first = nullptr;
  if (blocks_.empty()) {
    first = add_block(kMinimal);
  } else {
    first = blocks_.begin()->second.get();
    rekey(first, kMinimal);
  }
  first->items.insert(first->items.end(), collected.begin() + static_cast<std::ptrdiff_t>(m_),
                      collected.end());
  stats_.moves += collected.size() - m_;
  reindex(first);
  split_oversized(first);
  return out;
}

std::vector<std::vector<KeyValue>> BlockList::drain_runs() {
  std::vector<std::vector<KeyValue>> runs;
  for (auto& [lower, block] : blocks_) {
    if (!block->items.empty()) runs.push_back(std::move(block->items));
  }
  reset();
  return runs;
}

void BlockList::merge_runs(std::vector<std::vector<KeyValue>> runs, std::size_t source_block_size) {
  (void)source_block_size;
  ++stats_.merges;
  std::size_t total = 0;
  for (auto& run : runs) {
    stats_.merged_elements += run.size();
    // Duplicate keys keep the smaller value.
    auto keep_end = std::remove_if(run.begin(), run.end(), [&](const KeyValue& kv) {
      auto it = locator_.find(kv.key);
      if (it == locator_.end()) return false;
      if (ops_ != nullptr) ++ops_->comparisons;
      if (!less(kv.value, it->second.block->items[it->second.slot].value)) return true;
      remove_entry(kv.key);
      return false;
    });
    run.erase(keep_end, run.end());
    total += run.size();
  }
  if (total == 0) return;

  if (total < m_) {
    for (const auto& run : runs) {
      for (const KeyValue& kv : run) {
        Block* b = block_for(kv.value);
        append(b, kv);
        stats_.moves += 1;
        split_oversized(b);
      }
    }
    return;
  }

  // Every incoming value precedes every stored one, so whole batches of
  // at least M/3 elements become new leading blocks. The old first block
  // rides along with the last batch, which keeps it from ending up
  // undersized in the middle.
  std::vector<KeyValue> tail;
  {
    Block* old_first = blocks_.begin()->second.get();
    tail = std::move(old_first->items);
    count_ -= tail.size();
    erase_block(old_first);
  }

  const std::size_t threshold = std::max<std::size_t>(1, (m_ + 2) / 3);
  std::vector<KeyValue> batch;
  bool leading = true;
  Block* last = nullptr;
  auto flush = [&] {
    DistLabel lower = kMinimal;
    if (!leading) {
      CountingLess less_label{ops_};
      lower = std::min_element(batch.begin(), batch.end(),
                               [&](const KeyValue& a, const KeyValue& b) {
                                 return less_label(a.value, b.value);
                               })->value;
    }
    leading = false;
    Block* nb = add_block(lower);
    nb->items = std::move(batch);
    batch.clear();
    count_ += nb->items.size();
    stats_.moves += nb->items.size();
    reindex(nb);
    last = nb;
    split_oversized(nb);
  };
  for (auto& run : runs) {
    batch.insert(batch.end(), run.begin(), run.end());
    if (batch.size() >= threshold) flush();
  }
  batch.insert(batch.end(), tail.begin(), tail.end());
  stats_.moves += tail.size();
  if (!batch.empty()) flush();
  if (last != nullptr) join_undersized(last);
}

const DistLabel* BlockList::find(Vertex key) const {
  auto it = locator_.find(key);
  if (it == locator_.end()) return nullptr;
  return &it->second.block->items[it->second.slot].value;
}

std::vector<KeyValue> BlockList::entries() const {
  std::vector<KeyValue> out;
  out.reserve(count_);
  for (const auto& [lower, block] : blocks_) {
    out.insert(out.end(), block->items.begin(), block->items.end());
  }
  return out;
}

std::vector<std::size_t> BlockList::block_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& [lower, block] : blocks_) out.push_back(block->items.size());
  return out;
}

void BlockList::check_invariants() const {
  invariant(!blocks_.empty(), "block tree is empty");
  invariant(compare(blocks_.begin()->first, kMinimal) == Order::equal,
            "first block does not start at the minimal key");
  std::size_t seen = 0;
  for (auto it = blocks_.begin(); it != blocks_.end(); ++it) {
    const Block& b = *it->second;
    invariant(compare(it->first, b.lower) == Order::equal, "block key disagrees with block");
    auto next = std::next(it);
    for (std::uint32_t i = 0; i < b.items.size(); ++i) {
      const KeyValue& kv = b.items[i];
      invariant(compare(kv.value, b.lower) != Order::less, "value below its block interval");
      if (next != blocks_.end()) {
        invariant(compare(kv.value, next->first) == Order::less, "value above its block interval");
      } else {
        invariant(compare(kv.value, upper_) == Order::less, "value not below the bound");
      }
      auto loc = locator_.find(kv.key);
      invariant(loc != locator_.end() && loc->second.block == &b && loc->second.slot == i,
                "locator out of sync");
    }
    invariant(b.items.size() <= m_, "block over M");
    if (blocks_.size() > 1) invariant(b.items.size() * 3 >= m_, "block under M/3");
    seen += b.items.size();
  }
  invariant(seen == count_ && locator_.size() == count_, "element count out of sync");
}

// ---------------------------------------------------------------------------
// BaseMap
// ---------------------------------------------------------------------------

BaseMap::BaseMap(Bound upper, OpCounter* ops)
    : upper_(upper), ops_(ops), order_(EntryLess{ops}) {}

void BaseMap::insert(Vertex key, const DistLabel& value) {
  ++stats_.inserts;
  if (!less(value, upper_)) {
    throw BlockStructureError(BlockStructureError::Kind::invalid_parameter,
                              "inserted value is not below the structure bound");
  }
  if (auto it = values_.find(key); it != values_.end()) {
    if (ops_ != nullptr) ++ops_->comparisons;
    if (!less(value, it->second)) return;
    order_.erase({it->second, key});
    it->second = value;
  } else {
    values_.emplace(key, value);
  }
  order_.emplace(value, key);
  ++stats_.tree_ops;
}

PullResult BaseMap::pull() {
  ++stats_.pulls;
  PullResult out;
  if (order_.empty()) {
    out.separator = upper_;
    return out;
  }
  const Vertex key = order_.begin()->second;
  order_.erase(order_.begin());
  values_.erase(key);
  ++stats_.tree_ops;
  ++stats_.pulled_elements;
  out.keys.push_back(key);
  out.separator = order_.empty() ? upper_ : Bound::finite(order_.begin()->first);
  return out;
}

std::vector<std::vector<KeyValue>> BaseMap::drain_runs() {
  std::vector<std::vector<KeyValue>> runs;
  runs.reserve(order_.size());
  for (const auto& [value, key] : order_) runs.push_back({KeyValue{key, value}});
  order_.clear();
  values_.clear();
  return runs;
}

const DistLabel* BaseMap::find(Vertex key) const {
  auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

std::vector<KeyValue> BaseMap::entries() const {
  std::vector<KeyValue> out;
  out.reserve(order_.size());
  for (const auto& [value, key] : order_) out.push_back({key, value});
  return out;
}

void BaseMap::check_invariants() const {
  invariant(order_.size() == values_.size(), "base map index out of sync");
  for (const auto& [value, key] : order_) {
    auto it = values_.find(key);
    invariant(it != values_.end() && compare(it->second, value) == Order::equal,
              "base map value out of sync");
    invariant(less(value, upper_), "value not below the bound");
  }
}

// ---------------------------------------------------------------------------
// BlockStructure
// ---------------------------------------------------------------------------

BlockStructure BlockStructure::create(std::size_t block_size, Bound upper, std::size_t n_hint,
                                      OpCounter* ops, bool debug_checks) {
  if (block_size == 0) {
    throw BlockStructureError(BlockStructureError::Kind::invalid_parameter,
                              "block size must be at least 1");
  }
  if (block_size == 1) return BlockStructure(BaseMap(upper, ops), debug_checks);
  if (n_hint > 0) {
    const double m = static_cast<double>(block_size);
    if (m < std::log2(static_cast<double>(n_hint) / m)) {
      throw BlockStructureError(BlockStructureError::Kind::invalid_parameter,
                                "block size " + std::to_string(block_size) +
                                    " is below log2(N/M) for N = " + std::to_string(n_hint));
    }
  }
  return BlockStructure(BlockList(block_size, upper, ops, debug_checks), debug_checks);
}

std::size_t BlockStructure::block_size() const {
  if (const auto* list = std::get_if<BlockList>(&impl_)) return list->block_size();
  return 1;
}

const Bound& BlockStructure::upper() const {
  return std::visit([](const auto& s) -> const Bound& { return s.upper(); }, impl_);
}

std::size_t BlockStructure::size() const {
  return std::visit([](const auto& s) { return s.size(); }, impl_);
}

const BlockStats& BlockStructure::stats() const {
  return std::visit([](const auto& s) -> const BlockStats& { return s.stats(); }, impl_);
}

void BlockStructure::insert(Vertex key, const DistLabel& value) {
  std::visit([&](auto& s) { s.insert(key, value); }, impl_);
}

PullResult BlockStructure::pull() {
  return std::visit([](auto& s) { return s.pull(); }, impl_);
}

bool BlockStructure::contains(Vertex key) const {
  return std::visit([&](const auto& s) { return s.contains(key); }, impl_);
}

const DistLabel* BlockStructure::find(Vertex key) const {
  return std::visit([&](const auto& s) { return s.find(key); }, impl_);
}

std::vector<KeyValue> BlockStructure::entries() const {
  return std::visit([](const auto& s) { return s.entries(); }, impl_);
}

void BlockStructure::check_invariants() const {
  std::visit([](const auto& s) { s.check_invariants(); }, impl_);
}

void BlockStructure::merge(BlockStructure&& other) {
  auto* target = std::get_if<BlockList>(&impl_);
  if (target == nullptr) {
    throw BlockStructureError(BlockStructureError::Kind::unsupported,
                              "merge into an M = 1 structure is not supported");
  }
  if (other.empty()) return;
  if (debug_) {
    // A base map source has been rewrapped as plain sorted runs, so only
    // block-list sources carry the block-size precondition.
    if (!other.is_base_map() && other.block_size() * 3 >= target->block_size()) {
      throw BlockStructureError(BlockStructureError::Kind::merge_precondition_violated,
                                "merged structure needs block size below M/3");
    }
    const auto incoming = other.entries();
    const auto mine = target->entries();
    if (!mine.empty()) {
      auto by_value = [](const KeyValue& a, const KeyValue& b) { return a.value < b.value; };
      const auto& hi = *std::max_element(incoming.begin(), incoming.end(), by_value);
      const auto& lo = *std::min_element(mine.begin(), mine.end(), by_value);
      if (!(hi.value < lo.value)) {
        throw BlockStructureError(BlockStructureError::Kind::merge_precondition_violated,
                                  "merged values must all precede existing values");
      }
    }
  }
  const std::size_t source_block_size = other.block_size();
  auto runs = std::visit([](auto& s) { return s.drain_runs(); }, other.impl_);
  target->merge_runs(std::move(runs), source_block_size);
}

}  // namespace ssspx

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ssspx/labels.hpp"

namespace ssspx {

// Binary min-heap of vertices keyed by label, with position tracking for
// decrease-key. Positions live in an array sized to the vertex count;
// clear() only touches entries still in the heap.
class IndexedHeap {
 public:
  explicit IndexedHeap(std::size_t n = 0, OpCounter* ops = nullptr)
      : pos_(n, kAbsent), ops_(ops) {}

  void resize(std::size_t n) {
    pos_.assign(n, kAbsent);
    heap_.clear();
  }
  void set_counter(OpCounter* ops) { ops_ = ops; }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(Vertex v) const { return pos_[v] != kAbsent; }
  std::uint64_t heap_ops() const { return heap_ops_; }

  void push(Vertex v, const DistLabel& key) {
    ++heap_ops_;
    heap_.push_back({key, v});
    pos_[v] = static_cast<std::uint32_t>(heap_.size() - 1);
    sift_up(heap_.size() - 1);
  }

  void decrease(Vertex v, const DistLabel& key) {
    ++heap_ops_;
    const std::size_t i = pos_[v];
    heap_[i].first = key;
    sift_up(i);
  }

  void push_or_decrease(Vertex v, const DistLabel& key) {
    if (contains(v)) {
      decrease(v, key);
    } else {
      push(v, key);
    }
  }

  std::pair<Vertex, DistLabel> pop() {
    ++heap_ops_;
    auto top = heap_.front();
    pos_[top.second] = kAbsent;
    if (heap_.size() > 1) {
      heap_.front() = heap_.back();
      pos_[heap_.front().second] = 0;
      heap_.pop_back();
      sift_down(0);
    } else {
      heap_.pop_back();
    }
    return {top.second, top.first};
  }

  void clear() {
    for (const auto& e : heap_) pos_[e.second] = kAbsent;
    heap_.clear();
  }

 private:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;

  bool less_at(std::size_t a, std::size_t b) const {
    if (ops_ != nullptr) ++ops_->comparisons;
    return less(heap_[a].first, heap_[b].first);
  }

  void swap_at(std::size_t a, std::size_t b) {
    std::swap(heap_[a], heap_[b]);
    pos_[heap_[a].second] = static_cast<std::uint32_t>(a);
    pos_[heap_[b].second] = static_cast<std::uint32_t>(b);
  }

  void sift_up(std::size_t i) {
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!less_at(i, parent)) break;
      swap_at(i, parent);
      i = parent;
    }
  }

  void sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    while (true) {
      const std::size_t l = 2 * i + 1;
      if (l >= n) break;
      std::size_t best = l;
      if (l + 1 < n && less_at(l + 1, l)) best = l + 1;
      if (!less_at(best, i)) break;
      swap_at(i, best);
      i = best;
    }
  }

  std::vector<std::pair<DistLabel, Vertex>> heap_;
  std::vector<std::uint32_t> pos_;
  OpCounter* ops_;
  std::uint64_t heap_ops_ = 0;
};

}  // namespace ssspx

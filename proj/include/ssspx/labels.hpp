#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace ssspx {

using Vertex = std::uint32_t;

// Reserved id for "no predecessor". It sorts before every real vertex id.
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

enum class Order { less, equal, greater };

// Comparison and addition counts under the comparison-addition model.
struct OpCounter {
  std::uint64_t comparisons = 0;
  std::uint64_t additions = 0;
};

// A path candidate (length, nEdges, curr, pred), ordered lexicographically.
struct DistLabel {
  double length = 0.0;
  std::uint32_t hops = 0;
  Vertex curr = kNoVertex;
  Vertex pred = kNoVertex;

  static DistLabel source(Vertex s) { return {0.0, 0, s, kNoVertex}; }
  bool is_source() const { return hops == 0; }
};

// Either a finite 4-tuple or the infinity sentinel.
class Bound {
 public:
  Bound() = default;
  static Bound infinity() { return Bound{}; }
  static Bound finite(const DistLabel& label) { return Bound{label}; }

  bool is_infinite() const { return infinite_; }
  const DistLabel& label() const { return label_; }

  friend bool operator==(const Bound& a, const Bound& b);

 private:
  explicit Bound(const DistLabel& label) : label_(label), infinite_(false) {}

  DistLabel label_{};
  bool infinite_ = true;
};

namespace detail {

// Maps pred onto an order in which kNoVertex comes first.
inline std::int64_t pred_rank(Vertex p) {
  return p == kNoVertex ? -1 : static_cast<std::int64_t>(p);
}

}  // namespace detail

inline Order compare(const DistLabel& a, const DistLabel& b) {
  if (a.length != b.length) return a.length < b.length ? Order::less : Order::greater;
  if (a.hops != b.hops) return a.hops < b.hops ? Order::less : Order::greater;
  if (a.curr != b.curr) return a.curr < b.curr ? Order::less : Order::greater;
  const auto pa = detail::pred_rank(a.pred);
  const auto pb = detail::pred_rank(b.pred);
  if (pa != pb) return pa < pb ? Order::less : Order::greater;
  return Order::equal;
}

inline Order compare(const DistLabel& a, const Bound& b) {
  return b.is_infinite() ? Order::less : compare(a, b.label());
}

inline Order compare(const Bound& a, const DistLabel& b) {
  return a.is_infinite() ? Order::greater : compare(a.label(), b);
}

inline Order compare(const Bound& a, const Bound& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return Order::equal;
    return a.is_infinite() ? Order::greater : Order::less;
  }
  return compare(a.label(), b.label());
}

inline bool operator==(const DistLabel& a, const DistLabel& b) {
  return compare(a, b) == Order::equal;
}
inline bool operator<(const DistLabel& a, const DistLabel& b) {
  return compare(a, b) == Order::less;
}
inline bool operator==(const Bound& a, const Bound& b) {
  return compare(a, b) == Order::equal;
}

template <typename A, typename B>
bool less(const A& a, const B& b) {
  return compare(a, b) == Order::less;
}

template <typename A, typename B>
bool less_equal(const A& a, const B& b) {
  return compare(a, b) != Order::greater;
}

// The label of the path d_u followed by the edge (d_u.curr, v, w).
inline DistLabel extend(const DistLabel& du, Vertex v, double w) {
  return {du.length + w, du.hops + 1, v, du.curr};
}

// Strict-weak-order functor on labels that tallies comparisons.
struct CountingLess {
  OpCounter* ops = nullptr;
  bool operator()(const DistLabel& a, const DistLabel& b) const {
    if (ops != nullptr) ++ops->comparisons;
    return compare(a, b) == Order::less;
  }
};

enum class RelaxOutcome { rejected, improved, equal };

// Per-vertex current labels d[v]; unset entries compare above every real label.
class LabelStore {
 public:
  explicit LabelStore(std::size_t n = 0);

  std::size_t size() const { return labels_.size(); }
  bool is_set(Vertex v) const { return labels_[v].length != kUnsetLength; }
  const DistLabel& operator[](Vertex v) const { return labels_[v]; }

  void set_source(Vertex s) { labels_[s] = DistLabel::source(s); }

  // d[v] <- extend(d[u], (u, v, w)) iff the candidate is <= d[v] and < bound.
  RelaxOutcome relax(Vertex u, Vertex v, double w, const Bound& bound, OpCounter& ops);

  bool relax(Vertex u, Vertex v, double w, const Bound& bound) {
    OpCounter scratch;
    return relax(u, v, w, bound, scratch) != RelaxOutcome::rejected;
  }

  const std::vector<DistLabel>& labels() const { return labels_; }

 private:
  static constexpr double kUnsetLength = std::numeric_limits<double>::infinity();

  std::vector<DistLabel> labels_;
};

// Walks pred pointers from v back to the source. Returns the vertex chain
// source..v, or an empty vector if v is unset or the chain is broken.
std::vector<Vertex> pred_chain(const std::vector<DistLabel>& labels, Vertex v);

}  // namespace ssspx

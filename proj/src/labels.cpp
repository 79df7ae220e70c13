#include "ssspx/labels.hpp"

#include <algorithm>

namespace ssspx {

LabelStore::LabelStore(std::size_t n) {
  labels_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    labels_[v] = {kUnsetLength, std::numeric_limits<std::uint32_t>::max(),
                  static_cast<Vertex>(v), kNoVertex};
  }
}

RelaxOutcome LabelStore::relax(Vertex u, Vertex v, double w, const Bound& bound,
                               OpCounter& ops) {
  const DistLabel cand = extend(labels_[u], v, w);
  ++ops.additions;
  ++ops.comparisons;
  const Order vs_current = compare(cand, labels_[v]);
  if (vs_current == Order::greater) return RelaxOutcome::rejected;
  ++ops.comparisons;
  if (!less(cand, bound)) return RelaxOutcome::rejected;
  if (vs_current == Order::equal) return RelaxOutcome::equal;
  labels_[v] = cand;
  return RelaxOutcome::improved;
}

std::vector<Vertex> pred_chain(const std::vector<DistLabel>& labels, Vertex v) {
  std::vector<Vertex> chain;
  if (v >= labels.size() || labels[v].length == std::numeric_limits<double>::infinity()) {
    return chain;
  }
  Vertex cur = v;
  while (true) {
    chain.push_back(cur);
    const DistLabel& l = labels[cur];
    if (l.is_source()) break;
    // hops strictly decrease along a valid chain
    if (l.pred >= labels.size() || labels[l.pred].hops + 1 != l.hops ||
        chain.size() > labels.size()) {
      return {};
    }
    cur = l.pred;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace ssspx

#include "ssspx/oracle.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace ssspx {

bool OracleResult::reachable(Vertex v) const {
  return labels[v].length != std::numeric_limits<double>::infinity();
}

OracleResult dijkstra(const Graph& g, Vertex source) {
  if (source >= g.n()) throw std::out_of_range("oracle source out of range");
  LabelStore d(g.n());
  d.set_source(source);
  OracleResult out;
  std::vector<bool> done(g.n(), false);

  using Entry = std::pair<DistLabel, Vertex>;
  auto greater = [](const Entry& a, const Entry& b) { return b.first < a.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> pq(greater);
  pq.emplace(d[source], source);
  const Bound inf = Bound::infinity();
  while (!pq.empty()) {
    const auto [label, u] = pq.top();
    pq.pop();
    if (done[u] || compare(label, d[u]) != Order::equal) continue;
    done[u] = true;
    out.order.push_back(u);
    for (const Arc& arc : g.out(u)) {
      if (done[arc.to]) continue;
      OpCounter scratch;
      if (d.relax(u, arc.to, arc.weight, inf, scratch) == RelaxOutcome::improved) {
        pq.emplace(d[arc.to], arc.to);
      }
    }
  }
  out.labels = d.labels();
  return out;
}

OracleResult dijkstra(const ReducedGraph& g, Vertex original_source) {
  if (original_source >= g.rep.size()) throw std::out_of_range("oracle source out of range");
  return dijkstra(g.inner, g.rep[original_source]);
}

std::vector<Vertex> true_targets(const OracleResult& oracle, const Bound& bound,
                                 std::span<const Vertex> sources) {
  const std::size_t n = oracle.labels.size();
  std::vector<char> in_sources(n, 0);
  for (const Vertex s : sources) {
    if (s < n) in_sources[s] = 1;
  }
  // Extraction order lists every pred before its successors, so one pass
  // decides "chain meets sources" for all vertices.
  std::vector<char> meets(n, 0);
  std::vector<Vertex> out;
  for (const Vertex v : oracle.order) {
    const DistLabel& l = oracle.labels[v];
    meets[v] = in_sources[v] || (!l.is_source() && meets[l.pred]);
    if (meets[v] && less(l, bound)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ssspx

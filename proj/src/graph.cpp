#include "ssspx/graph.hpp"

#include <algorithm>
#include <cmath>

namespace ssspx {

void validate(std::uint32_t n, std::span<const Edge> edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src >= n || e.dst >= n) {
      throw GraphError(GraphError::Kind::vertex_out_of_range, i,
                       "edge " + std::to_string(i) + ": vertex id out of range [0, " +
                           std::to_string(n) + ")");
    }
    if (!std::isfinite(e.weight)) {
      throw GraphError(GraphError::Kind::non_finite_weight, i,
                       "edge " + std::to_string(i) + ": weight is not finite");
    }
    if (e.weight < 0.0) {
      throw GraphError(GraphError::Kind::negative_weight, i,
                       "edge " + std::to_string(i) + ": negative weight");
    }
  }
}

void validate(const Graph& g) { validate(g.n(), g.edges()); }

Graph::Graph(std::uint32_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  validate(n_, edges_);
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const Edge& e : edges_) ++offsets_[e.src + 1];
  for (std::uint32_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  arcs_.resize(edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    arcs_[fill[e.src]++] = {e.dst, static_cast<std::uint32_t>(i), e.weight};
  }
}

std::vector<std::uint32_t> Graph::in_degrees() const {
  std::vector<std::uint32_t> in(n_, 0);
  for (const Edge& e : edges_) ++in[e.dst];
  return in;
}

DegreeSummary degree_summary(const Graph& g) {
  DegreeSummary s;
  const auto in = g.in_degrees();
  for (Vertex v = 0; v < g.n(); ++v) {
    s.max_in = std::max(s.max_in, in[v]);
    s.max_out = std::max(s.max_out, static_cast<std::uint32_t>(g.out_degree(v)));
  }
  return s;
}

ReducedGraph reduce_degree(const Graph& g, std::uint32_t delta) {
  if (delta < 3) {
    throw GraphError(GraphError::Kind::invalid_delta, 0,
                     "degree bound must be at least 3, got " + std::to_string(delta));
  }
  const std::uint32_t n = g.n();
  const std::uint32_t per_slot = delta - 2;
  const auto in_deg = g.in_degrees();

  // Cycle of v occupies inner ids [first[v], first[v] + size[v]).
  std::vector<std::uint32_t> cycle_size(n);
  std::vector<Vertex> first(n);
  std::uint32_t total = 0;
  for (Vertex v = 0; v < n; ++v) {
    const std::uint64_t degree = static_cast<std::uint64_t>(in_deg[v]) + g.out_degree(v);
    cycle_size[v] = static_cast<std::uint32_t>(
        std::max<std::uint64_t>(1, (degree + per_slot - 1) / per_slot));
    first[v] = total;
    total += cycle_size[v];
  }

  // Incident edges of v are ranked incoming first, then outgoing, each by
  // original edge index; rank r lands on cycle vertex r mod |C_v|.
  std::vector<std::uint32_t> in_rank(n, 0);
  std::vector<std::uint32_t> out_rank(n, 0);
  std::vector<Edge> inner;
  inner.reserve(g.m() + total);
  for (const Edge& e : g.edges()) {
    const std::uint32_t r_out = in_deg[e.src] + out_rank[e.src]++;
    const std::uint32_t r_in = in_rank[e.dst]++;
    const Vertex from = first[e.src] + r_out % cycle_size[e.src];
    const Vertex to = first[e.dst] + r_in % cycle_size[e.dst];
    inner.push_back({from, to, e.weight});
  }
  std::vector<Vertex> origin(total);
  for (Vertex v = 0; v < n; ++v) {
    const std::uint32_t c = cycle_size[v];
    for (std::uint32_t i = 0; i < c; ++i) {
      origin[first[v] + i] = v;
      if (c > 1) inner.push_back({first[v] + i, first[v] + (i + 1) % c, 0.0});
    }
  }

  ReducedGraph out;
  out.inner = Graph(total, std::move(inner));
  out.delta = delta;
  out.rep = std::move(first);
  out.origin = std::move(origin);
  return out;
}

}  // namespace ssspx

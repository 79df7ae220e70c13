#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssspx/labels.hpp"

namespace ssspx {

struct Edge {
  Vertex src = 0;
  Vertex dst = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// One outgoing arc in the adjacency index; `id` is the index into edges().
struct Arc {
  Vertex to;
  std::uint32_t id;
  double weight;
};

class GraphError : public std::runtime_error {
 public:
  enum class Kind { negative_weight, non_finite_weight, vertex_out_of_range, invalid_delta };

  GraphError(Kind kind, std::size_t edge_index, const std::string& what)
      : std::runtime_error(what), kind_(kind), edge_index_(edge_index) {}

  Kind kind() const { return kind_; }
  std::size_t edge_index() const { return edge_index_; }

 private:
  Kind kind_;
  std::size_t edge_index_;
};

// Throws GraphError naming the first offending edge.
void validate(std::uint32_t n, std::span<const Edge> edges);

// Directed graph with non-negative finite weights. Immutable once built.
class Graph {
 public:
  Graph() = default;
  // Validates, then builds the per-vertex outgoing index (edges keep input order).
  Graph(std::uint32_t n, std::vector<Edge> edges);

  std::uint32_t n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Arc> out(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  std::size_t out_degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::vector<std::uint32_t> in_degrees() const;

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
};

void validate(const Graph& g);

// Constant-degree form of a graph: every vertex v is replaced by a zero-weight
// cycle, and every original edge joins the slot vertices of its endpoints.
struct ReducedGraph {
  Graph inner;
  std::uint32_t delta = 3;
  std::vector<Vertex> rep;     // original vertex -> first vertex of its cycle
  std::vector<Vertex> origin;  // inner vertex -> original vertex
};

ReducedGraph reduce_degree(const Graph& g, std::uint32_t delta);

struct DegreeSummary {
  std::uint32_t max_in = 0;
  std::uint32_t max_out = 0;
};

DegreeSummary degree_summary(const Graph& g);

}  // namespace ssspx

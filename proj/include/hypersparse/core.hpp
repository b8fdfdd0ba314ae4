#pragma once

// Domain types for weighted hypergraphs and ordinary multigraphs, and the
// quadratic forms that every other module is measured against.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hypersparse/errors.hpp"

namespace hsp {

using Vertex = std::uint32_t;

/// A weighted hyperedge. Well-formed edges hold sorted, duplicate-free
/// vertices; make_hyperedge() produces that form.
struct HyperEdge {
  std::vector<Vertex> vertices;
  double weight = 1.0;

  std::size_t size() const noexcept { return vertices.size(); }

  friend bool operator==(const HyperEdge&, const HyperEdge&) = default;
};

/// Sorts and deduplicates `vertices`. The result may have fewer than two
/// vertices; callers decide what to do with those.
HyperEdge make_hyperedge(std::vector<Vertex> vertices, double weight);

/// Vertex count plus hyperedges. Construction rejects vertex ids outside
/// [0, n) but otherwise stores edges as given; see validate() / normalize().
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::size_t num_vertices, std::vector<HyperEdge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<HyperEdge>& edges() const noexcept { return edges_; }
  const HyperEdge& edge(std::size_t e) const { return edges_.at(e); }

  /// Maximum hyperedge cardinality (0 for an empty hypergraph).
  std::size_t rank() const noexcept;
  /// Sum of |e| over all hyperedges.
  std::size_t total_size() const noexcept;
  double total_weight() const noexcept;
  double min_weight() const noexcept;
  double max_weight() const noexcept;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<HyperEdge> edges_;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted multigraph. Parallel edges are allowed and stay distinct; zero
/// weights are allowed and contribute nothing to the Laplacian.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t num_vertices) : n_(num_vertices) {}
  WeightedGraph(std::size_t num_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  /// Appends an edge and returns its index.
  std::size_t add_edge(Vertex u, Vertex v, double weight);
  void set_weight(std::size_t i, double weight);
  double total_weight() const noexcept;

  /// The same graph with every weight multiplied by `factor`.
  WeightedGraph scaled(double factor) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Complete graph on `r` vertices with uniform edge weight.
WeightedGraph complete_graph(std::size_t r, double weight = 1.0);

/// Q_H(x) = sum_e w(e) * max_{u,v in e} (x_u - x_v)^2.
double hyper_energy(const Hypergraph& h, std::span<const double> x);

/// x^T L_G x = sum_{(u,v)} w(u,v) (x_u - x_v)^2.
double graph_quadratic(const WeightedGraph& g, std::span<const double> x);

/// The ordinary graph with one edge per size-2 hyperedge. Throws InputError
/// if any hyperedge has more than two vertices.
WeightedGraph as_graph(const Hypergraph& h);

/// Component label per vertex, labels numbered from 0 in order of first
/// appearance.
std::vector<std::size_t> component_labels(const Hypergraph& h);
std::vector<std::size_t> component_labels(const WeightedGraph& g,
                                          bool positive_only = true);
bool is_connected(const Hypergraph& h);
/// Connectivity of the positive-weight subgraph.
bool is_connected(const WeightedGraph& g);

struct Diagnostics {
  std::vector<std::size_t> duplicate_vertex_edges;
  std::vector<std::size_t> nonpositive_weight_edges;
  std::vector<std::size_t> undersized_edges;  // fewer than two distinct vertices
  bool disconnected = false;
  std::vector<std::string> warnings;

  bool ok() const noexcept {
    return duplicate_vertex_edges.empty() &&
           nonpositive_weight_edges.empty() && undersized_edges.empty() &&
           !disconnected;
  }
};

/// Report-only inspection of a hypergraph.
Diagnostics validate(const Hypergraph& h);

struct Normalized {
  Hypergraph hypergraph;
  std::vector<std::string> warnings;
};

/// Deduplicates vertices inside hyperedges and drops those left with fewer
/// than two vertices. Nonpositive or non-finite weights throw InputError.
Normalized normalize(const Hypergraph& h);

/// Throws unless `h` is valid and connected. Entry point guard for the
/// balancing and sparsification pipelines.
void require_valid_connected(const Hypergraph& h);

struct Component {
  Hypergraph hypergraph;
  std::vector<Vertex> vertices;      // local id -> original id
  std::vector<std::size_t> edge_ids; // local edge -> original edge index
};

/// Splits `h` into connected components (isolated vertices give
/// single-vertex components with no hyperedges).
std::vector<Component> split_components(const Hypergraph& h);

}  // namespace hsp

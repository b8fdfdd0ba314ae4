#include "hypersparse/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "union_find.hpp"

namespace hsp {

namespace {

void check_length(std::size_t n, std::span<const double> x) {
  if (x.size() != n) {
    std::ostringstream msg;
    msg << "potential vector has length " << x.size() << ", expected " << n;
    throw InputError(msg.str());
  }
}

bool has_duplicates(const std::vector<Vertex>& vs) {
  std::vector<Vertex> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

std::size_t distinct_count(const std::vector<Vertex>& vs) {
  std::vector<Vertex> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

}  // namespace

HyperEdge make_hyperedge(std::vector<Vertex> vertices, double weight) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return HyperEdge{std::move(vertices), weight};
}

Hypergraph::Hypergraph(std::size_t num_vertices, std::vector<HyperEdge> edges)
    : n_(num_vertices), edges_(std::move(edges)) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (Vertex v : edges_[e].vertices) {
      if (v >= n_) {
        std::ostringstream msg;
        msg << "hyperedge " << e << " references vertex " << v
            << " outside [0, " << n_ << ")";
        throw InputError(msg.str());
      }
    }
  }
}

std::size_t Hypergraph::rank() const noexcept {
  std::size_t r = 0;
  for (const auto& e : edges_) r = std::max(r, e.size());
  return r;
}

std::size_t Hypergraph::total_size() const noexcept {
  std::size_t s = 0;
  for (const auto& e : edges_) s += e.size();
  return s;
}

double Hypergraph::total_weight() const noexcept {
  double s = 0.0;
  for (const auto& e : edges_) s += e.weight;
  return s;
}

double Hypergraph::min_weight() const noexcept {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) w = std::min(w, e.weight);
  return w;
}

double Hypergraph::max_weight() const noexcept {
  double w = 0.0;
  for (const auto& e : edges_) w = std::max(w, e.weight);
  return w;
}

WeightedGraph::WeightedGraph(std::size_t num_vertices, std::vector<Edge> edges)
    : n_(num_vertices) {
  edges_.reserve(edges.size());
  for (const auto& e : edges) add_edge(e.u, e.v, e.weight);
}

std::size_t WeightedGraph::add_edge(Vertex u, Vertex v, double weight) {
  if (u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self-loops are not allowed");
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw InputError("edge weights must be finite and nonnegative");
  }
  edges_.push_back(Edge{u, v, weight});
  return edges_.size() - 1;
}

void WeightedGraph::set_weight(std::size_t i, double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw InputError("edge weights must be finite and nonnegative");
  }
  edges_.at(i).weight = weight;
}

double WeightedGraph::total_weight() const noexcept {
  double s = 0.0;
  for (const auto& e : edges_) s += e.weight;
  return s;
}

WeightedGraph WeightedGraph::scaled(double factor) const {
  WeightedGraph out = *this;
  for (auto& e : out.edges_) e.weight *= factor;
  return out;
}

WeightedGraph complete_graph(std::size_t r, double weight) {
  WeightedGraph g(r);
  for (Vertex u = 0; u < r; ++u) {
    for (Vertex v = u + 1; v < r; ++v) g.add_edge(u, v, weight);
  }
  return g;
}

double hyper_energy(const Hypergraph& h, std::span<const double> x) {
  check_length(h.num_vertices(), x);
  double total = 0.0;
  for (const auto& e : h.edges()) {
    if (e.vertices.empty()) continue;
    double lo = x[e.vertices.front()];
    double hi = lo;
    for (Vertex v : e.vertices) {
      lo = std::min(lo, x[v]);
      hi = std::max(hi, x[v]);
    }
    total += e.weight * (hi - lo) * (hi - lo);
  }
  return total;
}

double graph_quadratic(const WeightedGraph& g, std::span<const double> x) {
  check_length(g.num_vertices(), x);
  double total = 0.0;
  for (const auto& e : g.edges()) {
    const double d = x[e.u] - x[e.v];
    total += e.weight * d * d;
  }
  return total;
}

WeightedGraph as_graph(const Hypergraph& h) {
  WeightedGraph g(h.num_vertices());
  for (const auto& e : h.edges()) {
    if (e.size() != 2) {
      throw InputError("as_graph requires every hyperedge to have size 2");
    }
    g.add_edge(e.vertices[0], e.vertices[1], e.weight);
  }
  return g;
}

std::vector<std::size_t> component_labels(const Hypergraph& h) {
  detail::UnionFind uf(h.num_vertices());
  for (const auto& e : h.edges()) {
    for (std::size_t i = 1; i < e.vertices.size(); ++i) {
      uf.unite(e.vertices[0], e.vertices[i]);
    }
  }
  return uf.labels();
}

std::vector<std::size_t> component_labels(const WeightedGraph& g,
                                          bool positive_only) {
  detail::UnionFind uf(g.num_vertices());
  for (const auto& e : g.edges()) {
    if (!positive_only || e.weight > 0.0) uf.unite(e.u, e.v);
  }
  return uf.labels();
}

bool is_connected(const Hypergraph& h) {
  if (h.num_vertices() <= 1) return true;
  const auto labels = component_labels(h);
  return *std::max_element(labels.begin(), labels.end()) == 0;
}

bool is_connected(const WeightedGraph& g) {
  if (g.num_vertices() <= 1) return true;
  const auto labels = component_labels(g, true);
  return *std::max_element(labels.begin(), labels.end()) == 0;
}

Diagnostics validate(const Hypergraph& h) {
  Diagnostics d;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const auto& edge = h.edges()[e];
    if (has_duplicates(edge.vertices)) {
      d.duplicate_vertex_edges.push_back(e);
      d.warnings.push_back("hyperedge " + std::to_string(e) +
                           " repeats a vertex");
    }
    if (!(edge.weight > 0.0) || !std::isfinite(edge.weight)) {
      d.nonpositive_weight_edges.push_back(e);
      d.warnings.push_back("hyperedge " + std::to_string(e) +
                           " has a nonpositive or non-finite weight");
    }
    if (distinct_count(edge.vertices) < 2) {
      d.undersized_edges.push_back(e);
      d.warnings.push_back("hyperedge " + std::to_string(e) +
                           " has fewer than two vertices and will be dropped");
    }
  }
  if (!is_connected(h)) {
    d.disconnected = true;
    d.warnings.push_back("hypergraph is disconnected");
  }
  return d;
}

Normalized normalize(const Hypergraph& h) {
  Normalized out;
  std::vector<HyperEdge> kept;
  kept.reserve(h.num_edges());
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const auto& edge = h.edges()[e];
    if (!(edge.weight > 0.0) || !std::isfinite(edge.weight)) {
      throw InputError("hyperedge " + std::to_string(e) +
                       " has a nonpositive or non-finite weight");
    }
    HyperEdge clean = make_hyperedge(edge.vertices, edge.weight);
    if (clean.size() < 2) {
      out.warnings.push_back("dropped hyperedge " + std::to_string(e) +
                             " with fewer than two distinct vertices");
      continue;
    }
    kept.push_back(std::move(clean));
  }
  out.hypergraph = Hypergraph(h.num_vertices(), std::move(kept));
  return out;
}

void require_valid_connected(const Hypergraph& h) {
  const Diagnostics d = validate(h);
  if (!d.duplicate_vertex_edges.empty() || !d.undersized_edges.empty() ||
      !d.nonpositive_weight_edges.empty()) {
    throw InputError("invalid hypergraph: " + d.warnings.front());
  }
  if (d.disconnected) {
    throw ConnectivityError(
        "hypergraph is disconnected; split it into components first");
  }
}

std::vector<Component> split_components(const Hypergraph& h) {
  const auto labels = component_labels(h);
  const std::size_t k =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<Component> comps(k);
  std::vector<Vertex> local(h.num_vertices());
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    auto& c = comps[labels[v]];
    local[v] = static_cast<Vertex>(c.vertices.size());
    c.vertices.push_back(static_cast<Vertex>(v));
  }
  std::vector<std::vector<HyperEdge>> edges(k);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const auto& edge = h.edges()[e];
    if (edge.vertices.empty()) continue;
    const std::size_t c = labels[edge.vertices.front()];
    HyperEdge mapped{{}, edge.weight};
    for (Vertex v : edge.vertices) mapped.vertices.push_back(local[v]);
    edges[c].push_back(std::move(mapped));
    comps[c].edge_ids.push_back(e);
  }
  for (std::size_t c = 0; c < k; ++c) {
    comps[c].hypergraph =
        Hypergraph(comps[c].vertices.size(), std::move(edges[c]));
  }
  return comps;
}

}  // namespace hsp

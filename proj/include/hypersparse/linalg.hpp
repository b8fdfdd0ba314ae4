#pragma once

// Dense Laplacian pseudoinverse with effective-resistance queries and
// rank-one (Sherman-Morrison) weight updates.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "hypersparse/core.hpp"

namespace hsp {

struct VertexPair {
  Vertex u = 0;
  Vertex v = 0;
};

struct OracleOptions {
  /// Rank-one updates between full rebuilds; 0 selects the vertex count.
  std::size_t rebuild_cadence = 0;
  /// 1 + lambda * R(f) at or below this value is treated as disconnecting.
  double disconnect_tolerance = 1e-12;
};

/// Dense Laplacian matrix of the positive-weight part of `g`.
Eigen::MatrixXd laplacian(const WeightedGraph& g);

/// Holds L_G^+ for a connected graph and keeps it current under single-edge
/// weight shifts. Reads are const and may run concurrently; shift_weight and
/// rebuild require exclusive access.
class ResistanceOracle {
 public:
  explicit ResistanceOracle(WeightedGraph g, OracleOptions options = {});

  std::size_t num_vertices() const noexcept { return graph_.num_vertices(); }
  const WeightedGraph& graph() const noexcept { return graph_; }
  const Eigen::MatrixXd& pseudoinverse() const noexcept { return pinv_; }

  /// b_{uv}^T L^+ b_{uv}.
  double resistance(Vertex u, Vertex v) const;
  double resistance(VertexPair p) const { return resistance(p.u, p.v); }
  /// Resistance between the endpoints of edge `i` of the source graph.
  double edge_resistance(std::size_t i) const;

  /// b_g^T L^+ b_f.
  double coupling(VertexPair f, VertexPair g) const;

  /// Adds `lambda` to the weight of source edge `i` and applies the matching
  /// rank-one update to L^+. Throws InputError if the weight would become
  /// negative and ConnectivityError if the update disconnects the graph; the
  /// oracle is unchanged in both cases.
  void shift_weight(std::size_t i, double lambda);

  /// Recomputes L^+ from the current source graph.
  void rebuild();

  std::size_t update_count() const noexcept { return updates_since_rebuild_; }
  std::size_t total_updates() const noexcept { return total_updates_; }
  std::size_t rebuild_count() const noexcept { return rebuilds_; }
  std::size_t rebuild_cadence() const noexcept { return cadence_; }

 private:
  WeightedGraph graph_;
  OracleOptions options_;
  std::size_t cadence_ = 0;
  Eigen::MatrixXd pinv_;
  std::size_t updates_since_rebuild_ = 0;
  std::size_t total_updates_ = 0;
  std::size_t rebuilds_ = 0;
};

ResistanceOracle build_oracle(const WeightedGraph& g, OracleOptions options = {});

/// Effective resistances on a possibly disconnected graph: one dense oracle
/// per connected component of the positive-weight subgraph. Pairs in
/// different components have infinite resistance.
class ComponentResistance {
 public:
  explicit ComponentResistance(const WeightedGraph& g);

  double resistance(Vertex u, Vertex v) const;
  bool connected(Vertex u, Vertex v) const {
    return label_[u] == label_[v];
  }
  std::size_t num_components() const noexcept { return blocks_.size(); }

 private:
  std::vector<std::size_t> label_;
  std::vector<std::size_t> local_;
  std::vector<Eigen::MatrixXd> blocks_;
};

}  // namespace hsp

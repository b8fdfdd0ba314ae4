#include "hypersparse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hsp {

namespace {

// Pseudoinverse by grounding vertex 0: invert the reduced Laplacian, embed it
// with a zero row/column, then project both sides onto the complement of the
// all-ones vector.
Eigen::MatrixXd grounded_pseudoinverse(const Eigen::MatrixXd& lap) {
  const Eigen::Index n = lap.rows();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  if (n <= 1) return x;

  const Eigen::Index k = n - 1;
  Eigen::LLT<Eigen::MatrixXd> llt(lap.bottomRightCorner(k, k));
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("reduced Laplacian is not positive definite");
  }
  const Eigen::MatrixXd& factor = llt.matrixLLT();
  const double max_diag = lap.diagonal().maxCoeff();
  for (Eigen::Index i = 0; i < k; ++i) {
    const double pivot = factor(i, i) * factor(i, i);
    if (!(pivot > 1e-15 * max_diag)) {
      throw ConditioningError("reduced Laplacian is numerically singular");
    }
  }
  x.bottomRightCorner(k, k) = llt.solve(Eigen::MatrixXd::Identity(k, k));

  const Eigen::VectorXd row_mean = x.rowwise().mean();
  const double grand_mean = row_mean.mean();
  Eigen::MatrixXd p = x;
  p.colwise() -= row_mean;
  p.rowwise() -= row_mean.transpose();
  p.array() += grand_mean;
  // Symmetrize away rounding asymmetry.
  return 0.5 * (p + p.transpose());
}

}  // namespace

Eigen::MatrixXd laplacian(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    if (e.weight <= 0.0) continue;
    lap(e.u, e.u) += e.weight;
    lap(e.v, e.v) += e.weight;
    lap(e.u, e.v) -= e.weight;
    lap(e.v, e.u) -= e.weight;
  }
  return lap;
}

ResistanceOracle::ResistanceOracle(WeightedGraph g, OracleOptions options)
    : graph_(std::move(g)), options_(options) {
  cadence_ = options_.rebuild_cadence == 0
                 ? std::max<std::size_t>(graph_.num_vertices(), 1)
                 : options_.rebuild_cadence;
  rebuild();
  rebuilds_ = 0;
}

void ResistanceOracle::rebuild() {
  if (!is_connected(graph_)) {
    throw ConnectivityError("positive-weight subgraph is disconnected");
  }
  pinv_ = grounded_pseudoinverse(laplacian(graph_));
  updates_since_rebuild_ = 0;
  ++rebuilds_;
}

double ResistanceOracle::resistance(Vertex u, Vertex v) const {
  const auto n = num_vertices();
  if (u >= n || v >= n) throw InputError("vertex id out of range");
  if (u == v) return 0.0;
  return pinv_(u, u) + pinv_(v, v) - 2.0 * pinv_(u, v);
}

double ResistanceOracle::edge_resistance(std::size_t i) const {
  const Edge& e = graph_.edge(i);
  return resistance(e.u, e.v);
}

double ResistanceOracle::coupling(VertexPair f, VertexPair g) const {
  const auto n = num_vertices();
  if (f.u >= n || f.v >= n || g.u >= n || g.v >= n) {
    throw InputError("vertex id out of range");
  }
  return pinv_(g.u, f.u) - pinv_(g.u, f.v) - pinv_(g.v, f.u) +
         pinv_(g.v, f.v);
}

void ResistanceOracle::shift_weight(std::size_t i, double lambda) {
  if (lambda == 0.0) return;
  const Edge e = graph_.edge(i);
  double updated = e.weight + lambda;
  if (updated < 0.0) {
    const double slack = 1e-12 * std::max(std::abs(e.weight), std::abs(lambda));
    if (updated < -slack) {
      throw InputError("weight shift would make an edge weight negative");
    }
    updated = 0.0;
  }
  const double r = resistance(e.u, e.v);
  const double denom = 1.0 + lambda * r;
  if (denom <= options_.disconnect_tolerance) {
    throw ConnectivityError("weight shift would disconnect the graph");
  }

  graph_.set_weight(i, updated);
  const Eigen::VectorXd col = pinv_.col(e.u) - pinv_.col(e.v);
  pinv_.noalias() -= (lambda / denom) * (col * col.transpose());
  ++updates_since_rebuild_;
  ++total_updates_;
  if (updates_since_rebuild_ >= cadence_) rebuild();
}

ResistanceOracle build_oracle(const WeightedGraph& g, OracleOptions options) {
  return ResistanceOracle(g, options);
}

ComponentResistance::ComponentResistance(const WeightedGraph& g)
    : label_(component_labels(g, true)), local_(g.num_vertices()) {
  const std::size_t k =
      label_.empty() ? 0 : *std::max_element(label_.begin(), label_.end()) + 1;
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t v = 0; v < label_.size(); ++v) local_[v] = sizes[label_[v]]++;

  std::vector<WeightedGraph> parts;
  parts.reserve(k);
  for (std::size_t c = 0; c < k; ++c) parts.emplace_back(sizes[c]);
  for (const auto& e : g.edges()) {
    if (e.weight <= 0.0) continue;
    parts[label_[e.u]].add_edge(static_cast<Vertex>(local_[e.u]),
                                static_cast<Vertex>(local_[e.v]), e.weight);
  }
  blocks_.reserve(k);
  for (const auto& part : parts) {
    blocks_.push_back(grounded_pseudoinverse(laplacian(part)));
  }
}

double ComponentResistance::resistance(Vertex u, Vertex v) const {
  if (u >= label_.size() || v >= label_.size()) {
    throw InputError("vertex id out of range");
  }
  if (u == v) return 0.0;
  if (label_[u] != label_[v]) return std::numeric_limits<double>::infinity();
  const auto& p = blocks_[label_[u]];
  const auto a = static_cast<Eigen::Index>(local_[u]);
  const auto b = static_cast<Eigen::Index>(local_[v]);
  return p(a, a) + p(b, b) - 2.0 * p(a, b);
}

}  // namespace hsp

#pragma once

// Spanning-tree potential: Psi(G) = log sum_T prod_{f in T} w(f).

#include "hypersparse/core.hpp"

namespace hsp {

/// Psi(G) via the log-determinant of the grounded Laplacian (matrix-tree
/// theorem). Throws ConnectivityError when the positive-weight subgraph is
/// disconnected.
double st_potential(const WeightedGraph& g);

/// Largest vertex count accepted by the enumeration routines.
inline constexpr std::size_t kMaxEnumerationVertices = 9;

/// Sum over all spanning trees of the product of edge weights, by explicit
/// enumeration. Returns 0 for disconnected graphs. Throws GuardError above
/// kMaxEnumerationVertices vertices.
double spanning_tree_sum_enumerated(const WeightedGraph& g);

/// log of spanning_tree_sum_enumerated(); ConnectivityError if it is 0.
double st_potential_brute(const WeightedGraph& g);

/// Change of Psi when an edge with resistance `resistance` gets `lambda`
/// added to its weight: log(1 + lambda * R). DomainError if 1 + lambda * R
/// is not positive.
double update_delta(double resistance, double lambda);

}  // namespace hsp

#pragma once

// Sparsifiers built by independent importance sampling: the hyperedge
// sampler driven by a balanced weight assignment, the ordinary-graph
// resistance sampler, clique surrogates, the polynomial-size pre-sparsifier
// and the end-to-end pipeline that chains them.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hypersparse/balancing.hpp"
#include "hypersparse/core.hpp"
#include "hypersparse/linalg.hpp"

namespace hsp {

struct SamplingConfig {
  double eps = 0.5;
  /// Oversampling multiplier: the importance sampler uses
  /// lambda = lambda_scale * ln(n)^3 / eps^4.
  double lambda_scale = 1.0;
  /// Constant in the pre-sparsifier rate 4 w R r^4 ln(n) / (c eps^2).
  double c = 1.0;
  std::uint64_t seed = 0;
  double gamma = 4.0;
  double eta = 0.0;  // 0 selects 1/n^2
  std::uint64_t max_rounds = 0;
  std::size_t rebuild_cadence = 0;
  /// Edge budget of clique surrogates: kappa * r * ln(r)^3.
  double surrogate_kappa = 1.0;
};

/// Throws InputError unless eps in (0, 1), lambda_scale > 0, c > 0.
void validate(const SamplingConfig& cfg);

struct EdgeSample {
  double probability = 1.0;
  double r_max = 0.0;
  bool kept = false;
};

struct StageSummary {
  std::string name;
  std::size_t input_edges = 0;
  double expected_size = 0.0;
  std::size_t kept = 0;
};

struct SparsifierOutput {
  /// Kept hyperedges with weights w(e) / p(e).
  Hypergraph sparsifier;
  /// For each sparsifier hyperedge, the index of the input hyperedge it
  /// came from.
  std::vector<std::size_t> origin;
  /// One entry per hyperedge of the hypergraph consumed by the final
  /// sampling stage (the input itself for single-stage samplers).
  std::vector<EdgeSample> diagnostics;
  std::vector<StageSummary> stages;
  std::uint64_t seed = 0;

  double expected_size() const;
};

/// lambda_scale * ln(n)^3 / eps^4.
double importance_lambda(const SamplingConfig& cfg, std::size_t n);

/// max_{f in F_e} R_G(f) for the clique of hyperedge `e`.
double r_max(const WeightAssignment& wa, std::size_t e,
             const ResistanceOracle& oracle);

/// Keeps each hyperedge independently with p(e) = min(1, w(e) R^max(e) lambda)
/// and reweights kept ones by 1/p(e). `wa` must be an assignment of `h` that
/// passes check_assignment(cfg.gamma, eta); otherwise PreconditionError.
SparsifierOutput importance_sparsify(const Hypergraph& h,
                                     const WeightAssignment& wa,
                                     const SamplingConfig& cfg);

/// Resistance sampling of an ordinary graph: p(f) = min(1, lambda w(f) R(f)),
/// kept edges reweighted by 1/p(f). Zero-weight edges are dropped.
WeightedGraph ordinary_sparsify(const WeightedGraph& g, double eps,
                                double lambda, std::uint64_t seed);

/// kappa * r * ln(r)^3, the surrogate edge budget.
double surrogate_edge_bound(std::size_t r, double kappa = 1.0);

/// A sparse graph on r vertices whose Laplacian is within [1 - eps, 1 + eps]
/// of the unit r-clique's, certified by an exact pencil check. Sampling is
/// retried with derived seeds; the unit clique itself is returned if every
/// attempt fails. Results are cached per (r, eps, seed, kappa).
WeightedGraph clique_surrogate(std::size_t r, double eps = 0.5,
                               std::uint64_t seed = 0, double kappa = 1.0);

/// Pre-sparsifier for hypergraphs whose hyperedge sizes all lie in
/// [r/2, r]. Resistances come from a graph of scaled clique surrogates, and
/// R^max is approximated from a fixed anchor vertex of each hyperedge.
SparsifierOutput uniform_sparsify(const Hypergraph& h, std::size_t r,
                                  double eps, const SamplingConfig& cfg);

/// Size class of a hyperedge for the pre-sparsifier: i with |e| in
/// [2^i, 2^{i+1}).
std::size_t size_class(std::size_t edge_size);

/// Splits hyperedges by size class and runs uniform_sparsify on each class
/// with r = 2^{i+1}; the outputs are unioned.
SparsifierOutput poly_size_sparsify(const Hypergraph& h, double eps,
                                    const SamplingConfig& cfg);

/// Weight class i >= 1 with w in [n^{10(i-1)}, n^{10 i}), computed in log
/// space. Requires w >= 1 and n >= 2.
std::size_t weight_class(double w, std::size_t n);

/// Full pipeline: pre-sparsify at eps/3, split weight classes by parity,
/// balance each part with separated balancing (alpha = beta = n^10,
/// gamma = cfg.gamma, eta = 1/n^2), importance-sample each part at eps/3,
/// and return the union.
SparsifierOutput fast_sparsify(const Hypergraph& h, const SamplingConfig& cfg);

/// Approximate balancing followed by importance sampling.
SparsifierOutput balanced_importance_sparsify(const Hypergraph& h,
                                              const SamplingConfig& cfg);

}  // namespace hsp

#pragma once

// Independent checkers for sparsifier quality and brute-force references for
// resistances and spanning-tree sums.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypersparse/core.hpp"

namespace hsp {

struct ProbeOptions {
  std::size_t gaussian = 200;
  std::size_t rademacher = 200;
  std::size_t two_sparse = 200;
  bool coordinates = true;
  /// Exhaustive cuts are added when n is at most this value.
  std::size_t cuts_max_n = 16;
};

struct CutReport {
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  std::uint64_t worst_cut = 0;  // bitmask of the side containing the worst ratio
  std::uint64_t cuts = 0;
};

struct VerificationReport {
  double max_over_ratio = 1.0;   // max over probes of Q~/Q
  double min_under_ratio = 1.0;  // min over probes of Q~/Q
  std::vector<double> worst_probe;
  std::optional<CutReport> cut;
  std::uint64_t probes = 0;
  std::uint64_t cuts = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  bool pass = true;

  /// Worst ratios including the cut check when it ran.
  double worst_over() const;
  double worst_under() const;
};

/// Compares Q_{H~} with Q_H on Gaussian, Rademacher, random two-sparse
/// difference and coordinate probes, plus all cuts when n is small. Probes
/// with Q_H(x) == 0 are skipped.
VerificationReport probe_check(const Hypergraph& h, const Hypergraph& sparse,
                               double eps, const ProbeOptions& options,
                               std::uint64_t seed);

/// Largest n accepted by cut_check.
inline constexpr std::size_t kMaxCutVertices = 20;

/// Exact extremes of cut(H~, S) / cut(H, S) over all 2^{n-1} - 1 cuts.
CutReport cut_check(const Hypergraph& h, const Hypergraph& sparse);

struct PencilRange {
  double min = 1.0;
  double max = 1.0;
};

/// Extreme generalized eigenvalues of (L_{G~}, L_G) on the complement of the
/// all-ones vector. Throws ConnectivityError if G is disconnected.
PencilRange pencil_ratio(const WeightedGraph& g, const WeightedGraph& sparse);

/// Grounded dense solve, independent of ResistanceOracle. n <= 64.
double brute_resistance(const WeightedGraph& g, Vertex u, Vertex v);

/// (x_u - x_v)^2 / x^T L x, a lower bound on R(u, v) for every x.
double variational_resistance_bound(const WeightedGraph& g, Vertex u, Vertex v,
                                    const std::vector<double>& x);

/// Raw spanning-tree sum by enumeration (no logarithm). n <= 9.
double brute_tree_sum(const WeightedGraph& g);

/// Flat "key = value" rendering of a report.
std::string to_text(const VerificationReport& report);

}  // namespace hsp

#pragma once

// Balanced weight assignments: every hyperedge is replaced by a weighted
// clique on its support, and weight is moved inside each clique from
// low-resistance edges to high-resistance edges until the clique's
// resistances agree up to a factor gamma.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <vector>

#include "hypersparse/core.hpp"
#include "hypersparse/linalg.hpp"

namespace hsp {

/// A hypergraph together with a clique graph whose per-hyperedge weights sum
/// to the hyperedge weight. The slots of hyperedge e occupy the contiguous
/// edge range [slot_begin(e), slot_end(e)) of graph(), ordered
/// lexicographically by vertex pair.
class WeightAssignment {
 public:
  /// Uniform split: every slot of e gets w(e) / C(|e|, 2).
  explicit WeightAssignment(Hypergraph h);

  const Hypergraph& hypergraph() const noexcept { return h_; }
  const WeightedGraph& graph() const noexcept { return g_; }

  std::size_t slot_begin(std::size_t e) const { return offsets_.at(e); }
  std::size_t slot_end(std::size_t e) const { return offsets_.at(e + 1); }
  auto slots(std::size_t e) const {
    return std::views::iota(slot_begin(e), slot_end(e));
  }
  /// Hyperedge owning slot `f`.
  std::size_t owner(std::size_t f) const { return owner_.at(f); }
  double clique_weight(std::size_t e) const;

  /// Replaces every slot weight. Throws InputError if a weight is negative
  /// or a clique sum drifts from w(e) by more than 1e-9 * w(e).
  void set_weights(std::span<const double> weights);
  std::vector<double> weights() const;

 private:
  Hypergraph h_;
  WeightedGraph g_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> owner_;
};

/// Algorithm-1/2 style initialization; validates that `h` is connected.
WeightAssignment init_assignment(const Hypergraph& h);

struct Violation {
  std::size_t hyperedge = 0;
  std::size_t f = 0;  // max-resistance slot
  std::size_t g = 0;  // min-resistance eligible slot
  double r_f = 0.0;
  double r_g = 0.0;
  double ratio() const { return r_f / r_g; }
};

struct Verdict {
  bool pass = true;
  /// The triple with the largest R(f)/R(g) among violating hyperedges.
  std::optional<Violation> worst;
};

/// Checks gamma * min_{g: w(g) >= eta w(e)} R(g) >= max_f R(f) for every
/// hyperedge, using a freshly built oracle. eta == 0 selects the exact
/// variant where eligible slots are those with w(g) > 0.
Verdict check_assignment(const WeightAssignment& wa, double gamma, double eta);

struct BalanceParams {
  double gamma = 4.0;
  double eta = 0.0;  // 0 selects 1/n^2 for the approximate algorithms
  /// 0 selects the documented default for the algorithm.
  std::uint64_t max_rounds = 0;
  std::size_t rebuild_cadence = 0;  // 0 selects n
  bool record_trace = false;
};

struct BalanceStep {
  std::size_t phase = 0;
  std::size_t hyperedge = 0;
  std::size_t f = 0;
  std::size_t g = 0;
  double lambda = 0.0;
  double r_f = 0.0;  // at selection time
  double r_g = 0.0;  // at selection time
  /// log(1 + lambda R(f)) + log(1 - lambda R'(g)), R' measured after f moved.
  double psi_gain = 0.0;
};

struct BalanceTrace {
  std::vector<BalanceStep> steps;
  /// Slot weights at the end of each phase (one entry for single-phase runs).
  std::vector<std::vector<double>> phase_snapshots;
};

struct BalanceResult {
  WeightAssignment assignment;
  std::uint64_t rounds = 0;
  std::uint64_t round_cap = 0;
  double psi_initial = 0.0;
  double psi_final = 0.0;
  BalanceTrace trace;  // populated when BalanceParams::record_trace is set
};

/// Raised when a balancing run exceeds its round cap; carries the partial
/// assignment reached so far.
class RoundCapError : public Error {
 public:
  RoundCapError(const std::string& what, WeightAssignment partial,
                std::uint64_t rounds)
      : Error(what), partial_(std::move(partial)), rounds_(rounds) {}

  const WeightAssignment& partial() const noexcept { return partial_; }
  std::uint64_t rounds() const noexcept { return rounds_; }

 private:
  WeightAssignment partial_;
  std::uint64_t rounds_;
};

/// Exact gamma-balancing (gamma > 1). Step size
/// min(w(g), (gamma - 1) / (2 gamma R(g))).
BalanceResult greedy_balance(const Hypergraph& h, const BalanceParams& params);

/// eta-approximate gamma-balancing (gamma >= 4, eta in (0, 1]). Step size
/// min(w(g), 1 / (2 R(g))).
BalanceResult greedy_approx_balance(const Hypergraph& h,
                                    const BalanceParams& params);

/// Hyperedge classes of a separated hypergraph, heaviest class first.
struct SeparatedPartition {
  std::vector<std::vector<std::size_t>> classes;
};

/// Returns a description of the first violated separation requirement, or
/// nullopt when every hyperedge is in exactly one non-empty class, each class
/// spans a weight ratio of at most alpha, and every earlier class is heavier
/// than every later one by a factor of at least beta.
std::optional<std::string> partition_violation(const Hypergraph& h,
                                               const SeparatedPartition& p,
                                               double alpha, double beta);

/// Phase-by-phase approximate balancing that never revisits earlier classes.
/// Requires a valid (alpha, beta)-separated partition with
/// beta >= 5 |E| gamma / eta.
BalanceResult separated_approx_balance(const Hypergraph& h,
                                       const SeparatedPartition& partition,
                                       double alpha, double beta,
                                       const BalanceParams& params);

/// Both sides of the separated-resistance inequalities for G = G+ u G-:
///   1/R_G(u,v) <= 1/R_{G+}(u,v) + zeta        (u, v connected in G+)
///   R_G(u,v) >= 4/5 R_{G+}(u,v)               (when R_G(u,v) <= 1/(5 zeta))
/// where zeta is the total weight of G-.
struct SeparatedResistanceBounds {
  double r_union = 0.0;
  double r_plus = 0.0;  // infinity when u, v are disconnected in G+
  double zeta = 0.0;
  bool conductance_bound_applies = false;      // u, v connected in G+
  double conductance_lhs = 0.0;          // 1 / R_G
  double conductance_rhs = 0.0;          // 1 / R_{G+} + zeta
  bool ratio_bound_applies = false;  // R_G <= 1 / (5 zeta)
  double ratio_lhs = 0.0;      // R_G
  double ratio_rhs = 0.0;      // 4/5 R_{G+}
};

SeparatedResistanceBounds separated_resistance_bounds(
    const WeightedGraph& g_plus, const WeightedGraph& g_minus, Vertex u,
    Vertex v);

}  // namespace hsp

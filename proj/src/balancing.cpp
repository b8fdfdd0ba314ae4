#include "hypersparse/balancing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypersparse/potential.hpp"

namespace hsp {

WeightAssignment::WeightAssignment(Hypergraph h)
    : h_(std::move(h)), g_(h_.num_vertices()) {
  offsets_.reserve(h_.num_edges() + 1);
  offsets_.push_back(0);
  for (std::size_t e = 0; e < h_.num_edges(); ++e) {
    const auto& edge = h_.edge(e);
    const std::size_t k = edge.size();
    if (k < 2) throw InputError("hyperedges need at least two vertices");
    const double share = edge.weight / static_cast<double>(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        g_.add_edge(edge.vertices[i], edge.vertices[j], share);
        owner_.push_back(e);
      }
    }
    offsets_.push_back(g_.num_edges());
  }
}

double WeightAssignment::clique_weight(std::size_t e) const {
  double s = 0.0;
  for (std::size_t f : slots(e)) s += g_.edge(f).weight;
  return s;
}

void WeightAssignment::set_weights(std::span<const double> weights) {
  if (weights.size() != g_.num_edges()) {
    throw InputError("weight vector does not match the number of slots");
  }
  for (std::size_t e = 0; e < h_.num_edges(); ++e) {
    double s = 0.0;
    for (std::size_t f : slots(e)) {
      if (weights[f] < 0.0) throw InputError("slot weights must be nonnegative");
      s += weights[f];
    }
    const double w = h_.edge(e).weight;
    if (std::abs(s - w) > 1e-9 * w) {
      std::ostringstream msg;
      msg << "clique of hyperedge " << e << " sums to " << s << ", expected "
          << w;
      throw InputError(msg.str());
    }
  }
  for (std::size_t f = 0; f < weights.size(); ++f) g_.set_weight(f, weights[f]);
}

std::vector<double> WeightAssignment::weights() const {
  std::vector<double> w;
  w.reserve(g_.num_edges());
  for (const auto& e : g_.edges()) w.push_back(e.weight);
  return w;
}

WeightAssignment init_assignment(const Hypergraph& h) {
  require_valid_connected(h);
  return WeightAssignment(h);
}

namespace {

enum class StepRule { kExact, kApprox };

bool eligible(double slot_weight, double edge_weight, double eta) {
  return eta == 0.0 ? slot_weight > 0.0 : slot_weight >= eta * edge_weight;
}

// Worst (f, g) pair inside one clique, or nullopt if the clique satisfies the
// balance condition. f is the max-resistance slot over the whole clique and g
// the min-resistance eligible slot; ties go to the lowest slot index.
template <typename ResistanceFn>
std::optional<Violation> find_violation(const WeightAssignment& wa,
                                        const WeightedGraph& g, std::size_t e,
                                        double gamma, double eta,
                                        ResistanceFn&& resistance) {
  const double w = wa.hypergraph().edge(e).weight;
  std::size_t best_f = 0, best_g = 0;
  double r_max = -1.0;
  double r_min = std::numeric_limits<double>::infinity();
  bool have_g = false;
  for (std::size_t f : wa.slots(e)) {
    const double r = resistance(f);
    if (r > r_max) {
      r_max = r;
      best_f = f;
    }
    if (eligible(g.edge(f).weight, w, eta) && r < r_min) {
      r_min = r;
      best_g = f;
      have_g = true;
    }
  }
  if (!have_g || !(r_max > gamma * r_min)) return std::nullopt;
  return Violation{e, best_f, best_g, r_max, r_min};
}

std::uint64_t to_cap(double rounds) {
  constexpr double kMax = 1.8e19;
  if (!(rounds < kMax)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(rounds)));
}

double resolve_eta(const BalanceParams& params, std::size_t n) {
  if (params.eta > 0.0) return params.eta;
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return 1.0 / (nn * nn);
}

// Drives the greedy loop over one phase (a subset of hyperedges). Scans
// hyperedges cyclically in index order starting after the last one touched;
// a clean pass on the incremental oracle is confirmed on a fresh rebuild
// before the phase ends.
class Balancer {
 public:
  Balancer(WeightAssignment wa, StepRule rule, double gamma, double eta,
           std::uint64_t cap, const BalanceParams& params)
      : wa_(std::move(wa)),
        oracle_(wa_.graph(), OracleOptions{params.rebuild_cadence, 1e-12}),
        rule_(rule),
        gamma_(gamma),
        eta_(eta),
        cap_(cap),
        record_(params.record_trace) {}

  void run_phase(std::size_t phase, std::span<const std::size_t> edges) {
    if (edges.empty()) return;
    std::size_t cursor = 0;
    std::size_t clean = 0;
    bool verified = false;
    while (true) {
      const std::size_t e = edges[cursor];
      auto violation = find_violation(
          wa_, oracle_.graph(), e, gamma_, eta_,
          [this](std::size_t f) { return oracle_.edge_resistance(f); });
      if (violation) {
        step(phase, *violation);
        clean = 0;
        verified = false;
        continue;  // re-examine the same hyperedge
      }
      if (++clean >= edges.size()) {
        if (verified) break;
        oracle_.rebuild();
        verified = true;
        clean = 0;
      }
      cursor = (cursor + 1) % edges.size();
    }
    if (record_) trace_.phase_snapshots.push_back(current_weights());
  }

  BalanceResult finish(double psi_initial) {
    wa_.set_weights(current_weights());
    BalanceResult result{wa_, rounds_, cap_, psi_initial, 0.0, {}};
    result.psi_final = st_potential(result.assignment.graph());
    result.trace = std::move(trace_);
    return result;
  }

 private:
  void step(std::size_t phase, const Violation& v) {
    if (rounds_ >= cap_) {
      WeightAssignment partial = wa_;
      partial.set_weights(current_weights());
      std::ostringstream msg;
      msg << "balancing exceeded its round cap of " << cap_;
      throw RoundCapError(msg.str(), std::move(partial), rounds_);
    }
    const double w_g = oracle_.graph().edge(v.g).weight;
    const double limit = rule_ == StepRule::kExact
                             ? (gamma_ - 1.0) / (2.0 * gamma_ * v.r_g)
                             : 1.0 / (2.0 * v.r_g);
    const double lambda = std::min(w_g, limit);

    oracle_.shift_weight(v.f, lambda);
    const double r_g_after = oracle_.edge_resistance(v.g);
    oracle_.shift_weight(v.g, -lambda);
    ++rounds_;

    if (record_) {
      const double gain =
          update_delta(v.r_f, lambda) + update_delta(r_g_after, -lambda);
      trace_.steps.push_back(
          BalanceStep{phase, v.hyperedge, v.f, v.g, lambda, v.r_f, v.r_g, gain});
    }
  }

  std::vector<double> current_weights() const {
    std::vector<double> w;
    w.reserve(oracle_.graph().num_edges());
    for (const auto& e : oracle_.graph().edges()) w.push_back(e.weight);
    return w;
  }

  WeightAssignment wa_;
  ResistanceOracle oracle_;
  StepRule rule_;
  double gamma_;
  double eta_;
  std::uint64_t cap_;
  bool record_;
  std::uint64_t rounds_ = 0;
  BalanceTrace trace_;
};

std::vector<std::size_t> all_edges(const Hypergraph& h) {
  std::vector<std::size_t> ids(h.num_edges());
  for (std::size_t e = 0; e < ids.size(); ++e) ids[e] = e;
  return ids;
}

double pow4(double x) { return x * x * x * x; }

}  // namespace

Verdict check_assignment(const WeightAssignment& wa, double gamma, double eta) {
  const ResistanceOracle oracle(wa.graph());
  Verdict verdict;
  for (std::size_t e = 0; e < wa.hypergraph().num_edges(); ++e) {
    auto v = find_violation(
        wa, wa.graph(), e, gamma, eta,
        [&oracle](std::size_t f) { return oracle.edge_resistance(f); });
    if (!v) continue;
    verdict.pass = false;
    if (!verdict.worst || v->ratio() > verdict.worst->ratio()) verdict.worst = v;
  }
  return verdict;
}

BalanceResult greedy_balance(const Hypergraph& h, const BalanceParams& params) {
  if (!(params.gamma > 1.0)) throw InputError("gamma must exceed 1");
  WeightAssignment wa = init_assignment(h);
  const double n = static_cast<double>(h.num_vertices());
  // No polynomial bound exists for exact balancing; reuse the approximate
  // algorithm's cap shape with eta = 1/n^2.
  const std::uint64_t cap =
      params.max_rounds != 0
          ? params.max_rounds
          : to_cap(10.0 * h.total_weight() / (h.min_weight() / (n * n)) *
                   pow4(n));
  const double psi0 = st_potential(wa.graph());
  Balancer balancer(std::move(wa), StepRule::kExact, params.gamma, 0.0, cap,
                    params);
  const auto ids = all_edges(h);
  balancer.run_phase(0, ids);
  return balancer.finish(psi0);
}

BalanceResult greedy_approx_balance(const Hypergraph& h,
                                    const BalanceParams& params) {
  if (!(params.gamma >= 4.0)) throw InputError("gamma must be at least 4");
  const double eta = resolve_eta(params, h.num_vertices());
  if (!(eta > 0.0 && eta <= 1.0)) throw InputError("eta must lie in (0, 1]");
  WeightAssignment wa = init_assignment(h);
  const double n = static_cast<double>(h.num_vertices());
  const std::uint64_t cap =
      params.max_rounds != 0
          ? params.max_rounds
          : to_cap(10.0 * h.total_weight() / (eta * h.min_weight()) * pow4(n));
  const double psi0 = st_potential(wa.graph());
  Balancer balancer(std::move(wa), StepRule::kApprox, params.gamma, eta, cap,
                    params);
  const auto ids = all_edges(h);
  balancer.run_phase(0, ids);
  return balancer.finish(psi0);
}

std::optional<std::string> partition_violation(const Hypergraph& h,
                                               const SeparatedPartition& p,
                                               double alpha, double beta) {
  std::vector<int> seen(h.num_edges(), 0);
  std::vector<double> lo, hi;
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    const auto& cls = p.classes[i];
    if (cls.empty()) return "class " + std::to_string(i) + " is empty";
    double mn = std::numeric_limits<double>::infinity();
    double mx = 0.0;
    for (std::size_t e : cls) {
      if (e >= h.num_edges()) {
        return "class " + std::to_string(i) + " references hyperedge " +
               std::to_string(e) + " out of range";
      }
      if (seen[e]++) {
        return "hyperedge " + std::to_string(e) + " appears more than once";
      }
      mn = std::min(mn, h.edge(e).weight);
      mx = std::max(mx, h.edge(e).weight);
    }
    if (mx > alpha * mn) {
      return "class " + std::to_string(i) + " spans a weight ratio above alpha";
    }
    lo.push_back(mn);
    hi.push_back(mx);
  }
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    if (!seen[e]) return "hyperedge " + std::to_string(e) + " is unassigned";
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    for (std::size_t j = i + 1; j < hi.size(); ++j) {
      if (lo[i] < beta * hi[j]) {
        return "classes " + std::to_string(i) + " and " + std::to_string(j) +
               " are not beta-separated";
      }
    }
  }
  return std::nullopt;
}

BalanceResult separated_approx_balance(const Hypergraph& h,
                                       const SeparatedPartition& partition,
                                       double alpha, double beta,
                                       const BalanceParams& params) {
  if (!(params.gamma >= 4.0)) throw InputError("gamma must be at least 4");
  if (!(alpha >= 1.0) || !(beta >= 1.0)) {
    throw InputError("alpha and beta must be at least 1");
  }
  const double eta = resolve_eta(params, h.num_vertices());
  if (!(eta > 0.0 && eta <= 1.0)) throw InputError("eta must lie in (0, 1]");
  if (auto why = partition_violation(h, partition, alpha, beta)) {
    throw InputError("invalid separated partition: " + *why);
  }
  const double m = static_cast<double>(h.num_edges());
  if (beta < 5.0 * m * params.gamma / eta) {
    throw InputError("beta must be at least 5 |E| gamma / eta");
  }
  WeightAssignment wa = init_assignment(h);
  const double n = static_cast<double>(h.num_vertices());
  const std::uint64_t cap =
      params.max_rounds != 0 ? params.max_rounds
                             : to_cap(10.0 * (alpha / eta) * m * m * pow4(n));
  const double psi0 = st_potential(wa.graph());
  Balancer balancer(std::move(wa), StepRule::kApprox, params.gamma, eta, cap,
                    params);
  for (std::size_t i = 0; i < partition.classes.size(); ++i) {
    balancer.run_phase(i, partition.classes[i]);
  }
  return balancer.finish(psi0);
}

SeparatedResistanceBounds separated_resistance_bounds(
    const WeightedGraph& g_plus, const WeightedGraph& g_minus, Vertex u,
    Vertex v) {
  if (g_plus.num_vertices() != g_minus.num_vertices()) {
    throw InputError("G+ and G- must share the vertex set");
  }
  WeightedGraph both = g_plus;
  for (const auto& e : g_minus.edges()) both.add_edge(e.u, e.v, e.weight);

  SeparatedResistanceBounds b;
  b.zeta = g_minus.total_weight();
  b.r_union = ComponentResistance(both).resistance(u, v);
  const ComponentResistance plus(g_plus);
  b.r_plus = plus.resistance(u, v);

  b.conductance_bound_applies = plus.connected(u, v);
  b.conductance_lhs = 1.0 / b.r_union;
  b.conductance_rhs = 1.0 / b.r_plus + b.zeta;

  b.ratio_bound_applies = b.zeta == 0.0 ? std::isfinite(b.r_union)
                                      : b.r_union <= 1.0 / (5.0 * b.zeta);
  b.ratio_lhs = b.r_union;
  b.ratio_rhs = 0.8 * b.r_plus;
  return b;
}

}  // namespace hsp

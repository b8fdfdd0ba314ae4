#include "hypersparse/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "hypersparse/rng.hpp"
#include "hypersparse/verify.hpp"

namespace hsp {

namespace {

double ln(std::size_t n) { return std::log(static_cast<double>(n)); }

struct Sampled {
  std::vector<HyperEdge> kept;
  std::vector<std::size_t> origin;
  std::vector<EdgeSample> diagnostics;
};

// Independent keep decisions; hyperedge e uses element ids[e] of the stream.
Sampled sample_edges(const Hypergraph& h, const std::vector<double>& r_max,
                     const std::vector<double>& rate,
                     const std::vector<std::size_t>& ids,
                     std::uint64_t stream_seed) {
  Sampled out;
  out.diagnostics.reserve(h.num_edges());
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const auto& edge = h.edge(e);
    const double p = std::min(1.0, rate[e]);
    const bool keep = p > 0.0 && rng::uniform(stream_seed, ids[e]) < p;
    out.diagnostics.push_back(EdgeSample{p, r_max[e], keep});
    if (keep) {
      out.kept.push_back(HyperEdge{edge.vertices, edge.weight / p});
      out.origin.push_back(ids[e]);
    }
  }
  return out;
}

std::vector<std::size_t> identity_ids(std::size_t m) {
  std::vector<std::size_t> ids(m);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return ids;
}

StageSummary summarize(std::string name, const std::vector<EdgeSample>& diag) {
  StageSummary s{std::move(name), diag.size(), 0.0, 0};
  for (const auto& d : diag) {
    s.expected_size += d.probability;
    s.kept += d.kept ? 1 : 0;
  }
  return s;
}

// Importance sampling against a weight assignment whose balance has been
// checked with `check_gamma`.
Sampled importance_stage(const WeightAssignment& wa, double lambda,
                         double check_gamma, double eta,
                         const std::vector<std::size_t>& ids,
                         std::uint64_t stream_seed) {
  const Verdict verdict = check_assignment(wa, check_gamma, eta);
  if (!verdict.pass) {
    throw PreconditionError(
        "weight assignment is not an eta-approximate gamma-balanced "
        "assignment of the input");
  }
  const Hypergraph& h = wa.hypergraph();
  const ResistanceOracle oracle(wa.graph());
  std::vector<double> rmax(h.num_edges());
  std::vector<double> rate(h.num_edges());
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    rmax[e] = r_max(wa, e, oracle);
    rate[e] = h.edge(e).weight * rmax[e] * lambda;
  }
  return sample_edges(h, rmax, rate, ids, stream_seed);
}

double eta_for(const SamplingConfig& cfg, std::size_t n) {
  if (cfg.eta > 0.0) return cfg.eta;
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return 1.0 / (nn * nn);
}

}  // namespace

void validate(const SamplingConfig& cfg) {
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  if (!(cfg.lambda_scale > 0.0)) throw InputError("lambda_scale must be positive");
  if (!(cfg.c > 0.0)) throw InputError("c must be positive");
  if (!(cfg.surrogate_kappa > 0.0)) throw InputError("kappa must be positive");
}

double SparsifierOutput::expected_size() const {
  double s = 0.0;
  for (const auto& d : diagnostics) s += d.probability;
  return s;
}

double importance_lambda(const SamplingConfig& cfg, std::size_t n) {
  const double l = ln(std::max<std::size_t>(n, 2));
  return cfg.lambda_scale * l * l * l / std::pow(cfg.eps, 4);
}

double r_max(const WeightAssignment& wa, std::size_t e,
             const ResistanceOracle& oracle) {
  double best = 0.0;
  for (std::size_t f : wa.slots(e)) {
    best = std::max(best, oracle.edge_resistance(f));
  }
  return best;
}

SparsifierOutput importance_sparsify(const Hypergraph& h,
                                     const WeightAssignment& wa,
                                     const SamplingConfig& cfg) {
  validate(cfg);
  if (!(wa.hypergraph() == h)) {
    throw InputError("weight assignment belongs to a different hypergraph");
  }
  const std::size_t n = h.num_vertices();
  Sampled s = importance_stage(wa, importance_lambda(cfg, n), cfg.gamma,
                               eta_for(cfg, n), identity_ids(h.num_edges()),
                               rng::derive(cfg.seed, rng::tag("importance")));
  SparsifierOutput out;
  out.sparsifier = Hypergraph(n, std::move(s.kept));
  out.origin = std::move(s.origin);
  out.diagnostics = std::move(s.diagnostics);
  out.stages.push_back(summarize("importance", out.diagnostics));
  out.seed = cfg.seed;
  return out;
}

WeightedGraph ordinary_sparsify(const WeightedGraph& g, double eps,
                                double lambda, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  if (!(lambda > 0.0)) throw InputError("lambda must be positive");
  const ResistanceOracle oracle(g);
  const std::uint64_t stream = rng::derive(seed, rng::tag("ordinary"));
  WeightedGraph out(g.num_vertices());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    if (e.weight <= 0.0) continue;
    const double p = std::min(1.0, lambda * e.weight * oracle.edge_resistance(i));
    if (rng::uniform(stream, i) < p) out.add_edge(e.u, e.v, e.weight / p);
  }
  return out;
}

double surrogate_edge_bound(std::size_t r, double kappa) {
  const double l = ln(std::max<std::size_t>(r, 2));
  return kappa * static_cast<double>(r) * l * l * l;
}

WeightedGraph clique_surrogate(std::size_t r, double eps, std::uint64_t seed,
                               double kappa) {
  if (r < 2) throw InputError("clique surrogates need r >= 2");
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  if (r == 2) return complete_graph(2);

  using Key = std::tuple<std::size_t, double, std::uint64_t, double>;
  static std::mutex mutex;
  static std::map<Key, WeightedGraph> cache;
  const Key key{r, eps, seed, kappa};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const WeightedGraph clique = complete_graph(r);
  // Every clique edge has w R = 2/r, so p = min(1, 2 lambda / r).
  const double lambda = 4.0 * ln(r) / (eps * eps);
  const double budget = surrogate_edge_bound(r, kappa);
  WeightedGraph result = clique;
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    WeightedGraph candidate = ordinary_sparsify(
        clique, eps, lambda, rng::derive(seed, rng::tag("surrogate") + attempt));
    if (static_cast<double>(candidate.num_edges()) > budget) continue;
    if (!is_connected(candidate)) continue;
    const PencilRange range = pencil_ratio(clique, candidate);
    if (range.min >= 1.0 - eps && range.max <= 1.0 + eps) {
      result = std::move(candidate);
      break;
    }
  }
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(result)).first->second;
}

SparsifierOutput uniform_sparsify(const Hypergraph& h, std::size_t r,
                                  double eps, const SamplingConfig& cfg) {
  validate(cfg);
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  const std::size_t n = h.num_vertices();
  if (n < 2) throw InputError("uniform_sparsify needs at least two vertices");
  for (const auto& e : h.edges()) {
    if (2 * e.size() < r || e.size() > r || e.size() < 2) {
      throw InputError("hyperedge sizes must lie in [r/2, r]");
    }
  }

  const std::uint64_t surrogate_seed = rng::derive(cfg.seed, rng::tag("surrogate"));
  WeightedGraph g(n);
  for (const auto& e : h.edges()) {
    const WeightedGraph& s =
        clique_surrogate(e.size(), 0.5, surrogate_seed, cfg.surrogate_kappa);
    for (const auto& f : s.edges()) {
      g.add_edge(e.vertices[f.u], e.vertices[f.v], f.weight * e.weight);
    }
  }
  const ComponentResistance resistance(g);

  const double rd = static_cast<double>(r);
  const double scale = 4.0 * rd * rd * rd * rd * ln(n) / (cfg.c * eps * eps);
  std::vector<double> rmax(h.num_edges());
  std::vector<double> rate(h.num_edges());
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edge(i);
    const Vertex anchor = e.vertices.front();
    double best = 0.0;
    for (Vertex v : e.vertices) best = std::max(best, resistance.resistance(anchor, v));
    rmax[i] = best;
    rate[i] = e.weight * best * scale;
  }
  Sampled s = sample_edges(h, rmax, rate, identity_ids(h.num_edges()),
                           rng::derive(cfg.seed, rng::tag("uniform") + r));
  SparsifierOutput out;
  out.sparsifier = Hypergraph(n, std::move(s.kept));
  out.origin = std::move(s.origin);
  out.diagnostics = std::move(s.diagnostics);
  out.stages.push_back(summarize("uniform r=" + std::to_string(r), out.diagnostics));
  out.seed = cfg.seed;
  return out;
}

std::size_t size_class(std::size_t edge_size) {
  if (edge_size < 2) throw InputError("hyperedges need at least two vertices");
  std::size_t i = 0;
  while ((std::size_t{2} << i) <= edge_size) ++i;
  return i;
}

SparsifierOutput poly_size_sparsify(const Hypergraph& h, double eps,
                                    const SamplingConfig& cfg) {
  validate(cfg);
  require_valid_connected(h);
  const std::size_t n = h.num_vertices();

  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    classes[size_class(h.edge(e).size())].push_back(e);
  }

  SparsifierOutput out;
  out.seed = cfg.seed;
  out.diagnostics.resize(h.num_edges());
  std::vector<std::pair<std::size_t, HyperEdge>> kept;
  for (const auto& [i, ids] : classes) {
    std::vector<HyperEdge> edges;
    edges.reserve(ids.size());
    for (std::size_t e : ids) edges.push_back(h.edge(e));
    const Hypergraph part(n, std::move(edges));
    SparsifierOutput sub = uniform_sparsify(part, std::size_t{2} << i, eps, cfg);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      out.diagnostics[ids[k]] = sub.diagnostics[k];
    }
    for (std::size_t k = 0; k < sub.origin.size(); ++k) {
      kept.emplace_back(ids[sub.origin[k]], sub.sparsifier.edge(k));
    }
    out.stages.push_back(std::move(sub.stages.front()));
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<HyperEdge> edges;
  edges.reserve(kept.size());
  for (auto& [origin, edge] : kept) {
    out.origin.push_back(origin);
    edges.push_back(std::move(edge));
  }
  out.sparsifier = Hypergraph(n, std::move(edges));
  return out;
}

std::size_t weight_class(double w, std::size_t n) {
  if (n < 2) throw InputError("weight classes need n >= 2");
  if (!(w >= 1.0) || !std::isfinite(w)) {
    throw InputError("weight classes need finite weights >= 1");
  }
  const double nd = static_cast<double>(n);
  const double step = 10.0 * std::log(nd);
  auto k = static_cast<long long>(std::floor(std::log(w) / step));
  // Correct log rounding at the interval boundaries with exact powers.
  auto bound = [&](long long j) { return std::pow(nd, 10.0 * static_cast<double>(j)); };
  while (k > 0 && bound(k) > w) --k;
  while (std::isfinite(bound(k + 1)) && bound(k + 1) <= w) ++k;
  return static_cast<std::size_t>(k) + 1;
}

namespace {

// Balances and samples one parity part, component by component.
void sample_parity_part(const Hypergraph& part,
                        const std::vector<std::size_t>& part_ids,
                        const std::vector<std::size_t>& part_class,
                        const SamplingConfig& cfg, std::size_t n,
                        std::uint64_t stream_seed,
                        std::vector<EdgeSample>& diagnostics,
                        std::vector<std::pair<std::size_t, HyperEdge>>& kept) {
  const double nd = static_cast<double>(n);
  const double separation = std::pow(nd, 10.0);
  const double eta = eta_for(cfg, n);
  SamplingConfig stage = cfg;
  stage.eps = cfg.eps / 3.0;
  const double lambda = importance_lambda(stage, n);

  for (const Component& comp : split_components(part)) {
    const Hypergraph& hc = comp.hypergraph;
    if (hc.num_edges() == 0) continue;
    // Heaviest class first.
    std::map<std::size_t, std::vector<std::size_t>, std::greater<>> by_class;
    for (std::size_t k = 0; k < hc.num_edges(); ++k) {
      by_class[part_class[comp.edge_ids[k]]].push_back(k);
    }
    SeparatedPartition partition;
    for (auto& [cls, ids] : by_class) partition.classes.push_back(std::move(ids));

    BalanceParams params;
    params.gamma = cfg.gamma;
    params.eta = eta;
    params.max_rounds = cfg.max_rounds;
    params.rebuild_cadence = cfg.rebuild_cadence;
    const BalanceResult balanced =
        separated_approx_balance(hc, partition, separation, separation, params);

    std::vector<std::size_t> ids;
    ids.reserve(hc.num_edges());
    for (std::size_t k : comp.edge_ids) ids.push_back(part_ids[k]);
    Sampled s = importance_stage(balanced.assignment, lambda, 2.0 * cfg.gamma,
                                 eta, ids, stream_seed);
    for (std::size_t k = 0; k < hc.num_edges(); ++k) {
      diagnostics[ids[k]] = s.diagnostics[k];
    }
    for (std::size_t k = 0; k < s.kept.size(); ++k) {
      HyperEdge edge = std::move(s.kept[k]);
      for (auto& v : edge.vertices) v = comp.vertices[v];
      kept.emplace_back(s.origin[k], std::move(edge));
    }
  }
}

}  // namespace

SparsifierOutput fast_sparsify(const Hypergraph& h, const SamplingConfig& cfg) {
  validate(cfg);
  require_valid_connected(h);
  const std::size_t n = h.num_vertices();
  if (n < 2) throw InputError("fast_sparsify needs at least two vertices");

  SparsifierOutput pre = poly_size_sparsify(h, cfg.eps / 3.0, cfg);
  const Hypergraph& reduced = pre.sparsifier;

  SparsifierOutput out;
  out.seed = cfg.seed;
  out.stages = pre.stages;
  out.diagnostics.resize(reduced.num_edges());

  // Classes are computed on weights rescaled so the minimum is 1.
  const double scale = reduced.num_edges() ? 1.0 / reduced.min_weight() : 1.0;
  std::vector<std::size_t> cls(reduced.num_edges());
  for (std::size_t e = 0; e < reduced.num_edges(); ++e) {
    cls[e] = weight_class(std::max(1.0, reduced.edge(e).weight * scale), n);
  }

  std::vector<std::pair<std::size_t, HyperEdge>> kept;
  for (std::size_t parity : {1u, 0u}) {
    std::vector<HyperEdge> edges;
    std::vector<std::size_t> ids, part_class;
    for (std::size_t e = 0; e < reduced.num_edges(); ++e) {
      if (cls[e] % 2 != parity) continue;
      edges.push_back(reduced.edge(e));
      ids.push_back(e);
      part_class.push_back(cls[e]);
    }
    if (edges.empty()) continue;
    const Hypergraph part(n, std::move(edges));
    const std::uint64_t stream = rng::derive(
        cfg.seed, rng::tag(parity == 1 ? "importance/odd" : "importance/even"));
    sample_parity_part(part, ids, part_class, cfg, n, stream, out.diagnostics,
                       kept);
  }
  out.stages.push_back(summarize("importance", out.diagnostics));

  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<HyperEdge> edges;
  edges.reserve(kept.size());
  for (auto& [index, edge] : kept) {
    out.origin.push_back(pre.origin[index]);
    edges.push_back(std::move(edge));
  }
  out.sparsifier = Hypergraph(n, std::move(edges));
  return out;
}

SparsifierOutput balanced_importance_sparsify(const Hypergraph& h,
                                              const SamplingConfig& cfg) {
  validate(cfg);
  BalanceParams params;
  params.gamma = cfg.gamma;
  params.eta = eta_for(cfg, h.num_vertices());
  params.max_rounds = cfg.max_rounds;
  params.rebuild_cadence = cfg.rebuild_cadence;
  const BalanceResult balanced = greedy_approx_balance(h, params);
  return importance_sparsify(h, balanced.assignment, cfg);
}

}  // namespace hsp

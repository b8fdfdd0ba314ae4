#include "hypersparse/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hypersparse/rng.hpp"

namespace hsp {

namespace {

using Engine = std::mt19937_64;

std::size_t uniform_size(Engine& gen, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(gen);
}

std::vector<Vertex> random_subset(Engine& gen, const std::vector<Vertex>& pool,
                                  std::size_t k) {
  std::vector<Vertex> out;
  std::sample(pool.begin(), pool.end(), std::back_inserter(out), k, gen);
  return out;
}

std::size_t min_backbone(std::size_t n, std::size_t rank) {
  return n <= 1 ? 0 : (n - 1 + rank - 2) / (rank - 1);
}

// Chain of hyperedges over `order`: each one adds fresh vertices and shares
// one vertex with its predecessor, so the chain spans `order`. Uses at most
// `budget` hyperedges.
std::vector<HyperEdge> hyper_path(Engine& gen, const std::vector<Vertex>& order,
                                  std::size_t rank, std::size_t budget) {
  std::vector<HyperEdge> out;
  if (order.size() < 2) return out;
  std::size_t next = 1;  // first vertex not yet covered
  while (next < order.size()) {
    const std::size_t remaining = order.size() - next;
    const std::size_t left = budget - out.size();
    // Fresh vertices this hyperedge must take so the rest still fits.
    const std::size_t later = (left - 1) * (rank - 1);
    const std::size_t lo = remaining > later ? remaining - later : 1;
    const std::size_t hi = std::min(rank - 1, remaining);
    const std::size_t fresh = uniform_size(gen, std::min(lo, hi), hi);
    std::vector<Vertex> vs{order[next - 1]};
    for (std::size_t i = 0; i < fresh; ++i) vs.push_back(order[next + i]);
    next += fresh;
    out.push_back(make_hyperedge(std::move(vs), 1.0));
  }
  return out;
}

void check_common(const GeneratorOptions& o) {
  if (o.n < 2) throw InputError("generators need n >= 2");
  if (o.rank < 2 || o.rank > o.n) throw InputError("rank must lie in [2, n]");
  if (o.m < min_backbone(o.n, o.rank)) {
    throw InputError("too few hyperedges to connect n vertices at this rank");
  }
}

std::vector<Vertex> iota_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), Vertex{0});
  return v;
}

std::vector<HyperEdge> uniform_random(Engine& gen, const GeneratorOptions& o) {
  auto order = iota_vertices(o.n);
  std::shuffle(order.begin(), order.end(), gen);
  std::vector<HyperEdge> edges = hyper_path(gen, order, o.rank, o.m);
  const auto all = iota_vertices(o.n);
  while (edges.size() < o.m) {
    edges.push_back(make_hyperedge(
        random_subset(gen, all, uniform_size(gen, 2, o.rank)), 1.0));
  }
  std::shuffle(edges.begin(), edges.end(), gen);
  return edges;
}

std::vector<HyperEdge> planted_clique_union(Engine& gen,
                                            const GeneratorOptions& o) {
  auto order = iota_vertices(o.n);
  std::shuffle(order.begin(), order.end(), gen);
  std::vector<HyperEdge> edges = hyper_path(gen, order, o.rank, o.m);
  // Contiguous groups of `order` of size about 2 * rank are the planted
  // communities; extra hyperedges stay inside one group.
  const std::size_t group = std::min(o.n, 2 * o.rank);
  const std::size_t groups = (o.n + group - 1) / group;
  while (edges.size() < o.m) {
    const std::size_t g = uniform_size(gen, 0, groups - 1);
    const std::size_t begin = g * group;
    const std::size_t end = std::min(o.n, begin + group);
    std::vector<Vertex> pool(order.begin() + begin, order.begin() + end);
    if (pool.size() < 2) pool.assign(order.end() - 2, order.end());
    const std::size_t k = uniform_size(gen, 2, std::min(o.rank, pool.size()));
    edges.push_back(make_hyperedge(random_subset(gen, pool, k), 1.0));
  }
  std::shuffle(edges.begin(), edges.end(), gen);
  return edges;
}

std::vector<HyperEdge> path_plus_hyperedges(Engine& gen,
                                            const GeneratorOptions& o) {
  if (o.m < o.n - 1) throw InputError("path-plus-hyperedges needs m >= n - 1");
  std::vector<HyperEdge> edges;
  for (Vertex v = 0; v + 1 < o.n; ++v) edges.push_back(make_hyperedge({v, v + 1}, 1.0));
  const auto all = iota_vertices(o.n);
  while (edges.size() < o.m) {
    edges.push_back(make_hyperedge(
        random_subset(gen, all, uniform_size(gen, 2, o.rank)), 1.0));
  }
  return edges;
}

GeneratedInstance separated_weights(Engine& gen, const GeneratorOptions& o) {
  if (o.classes < 1 || o.classes > o.m) {
    throw InputError("separated-weights needs 1 <= classes <= m");
  }
  const double default_sep = std::pow(static_cast<double>(o.n), 10.0);
  const double alpha = o.alpha > 0.0 ? o.alpha : default_sep;
  const double beta = o.beta > 0.0 ? o.beta : default_sep;
  if (alpha < 1.0 || beta < 1.0) throw InputError("alpha and beta must be >= 1");

  std::vector<HyperEdge> edges = uniform_random(gen, o);
  std::vector<std::size_t> cls(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    cls[e] = e < o.classes ? e : uniform_size(gen, 0, o.classes - 1);
  }
  std::shuffle(cls.begin(), cls.end(), gen);

  // Class 0 is the heaviest. Each class spans a ratio of at most
  // min(alpha, 2); consecutive classes are exactly beta apart at the gap.
  const double spread = std::min(alpha, 2.0);
  std::vector<double> base(o.classes);
  base[o.classes - 1] = 1.0;
  for (std::size_t i = o.classes - 1; i-- > 0;) base[i] = base[i + 1] * spread * beta;
  for (double b : base) {
    if (!std::isfinite(b * spread)) {
      throw InputError("separated weights overflow; use fewer classes");
    }
  }
  std::uniform_real_distribution<double> unit(1.0, spread);
  SeparatedManifest manifest{alpha, beta, {}};
  manifest.partition.classes.resize(o.classes);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    edges[e].weight = base[cls[e]] * unit(gen);
    manifest.partition.classes[cls[e]].push_back(e);
  }
  return {Hypergraph(o.n, std::move(edges)), std::move(manifest)};
}

}  // namespace

Model parse_model(std::string_view name) {
  if (name == "uniform-random") return Model::kUniformRandom;
  if (name == "planted-clique-union") return Model::kPlantedCliqueUnion;
  if (name == "path-plus-hyperedges") return Model::kPathPlusHyperedges;
  if (name == "separated-weights") return Model::kSeparatedWeights;
  throw InputError("unknown model '" + std::string(name) + "'");
}

std::string_view model_name(Model model) {
  switch (model) {
    case Model::kUniformRandom: return "uniform-random";
    case Model::kPlantedCliqueUnion: return "planted-clique-union";
    case Model::kPathPlusHyperedges: return "path-plus-hyperedges";
    case Model::kSeparatedWeights: return "separated-weights";
  }
  return "unknown";
}

GeneratedInstance generate(const GeneratorOptions& options) {
  check_common(options);
  Engine gen = rng::engine(options.seed, rng::tag(model_name(options.model)));
  switch (options.model) {
    case Model::kUniformRandom:
      return {Hypergraph(options.n, uniform_random(gen, options)), std::nullopt};
    case Model::kPlantedCliqueUnion:
      return {Hypergraph(options.n, planted_clique_union(gen, options)),
              std::nullopt};
    case Model::kPathPlusHyperedges:
      return {Hypergraph(options.n, path_plus_hyperedges(gen, options)),
              std::nullopt};
    case Model::kSeparatedWeights:
      return separated_weights(gen, options);
  }
  throw InputError("unknown model");
}

}  // namespace hsp

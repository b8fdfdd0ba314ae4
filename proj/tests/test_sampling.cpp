#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hypersparse/balancing.hpp"
#include "hypersparse/errors.hpp"
#include "hypersparse/generate.hpp"
#include "hypersparse/linalg.hpp"
#include "hypersparse/rng.hpp"
#include "hypersparse/sampling.hpp"
#include "hypersparse/verify.hpp"
#include "oracles.hpp"

namespace {

using hsp::Hypergraph;
using hsp::make_hyperedge;
using hsp::SamplingConfig;
using hsp::WeightedGraph;

Hypergraph random_hypergraph(std::uint64_t seed, std::size_t n, std::size_t m,
                             std::size_t rank) {
  hsp::GeneratorOptions o;
  o.n = n;
  o.m = m;
  o.rank = rank;
  o.seed = seed;
  return hsp::generate(o).hypergraph;
}

// Hypergraph whose hyperedge sizes all lie in [lo, hi].
Hypergraph sized_hypergraph(std::uint64_t seed, std::size_t n, std::size_t m,
                            std::size_t lo, std::size_t hi) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> size(lo, hi);
  std::uniform_real_distribution<double> w(0.5, 3.0);
  std::vector<hsp::Vertex> all(n);
  for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<hsp::Vertex>(v);
  while (true) {
    std::vector<hsp::HyperEdge> edges;
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<hsp::Vertex> vs;
      std::sample(all.begin(), all.end(), std::back_inserter(vs), size(gen), gen);
      edges.push_back(make_hyperedge(vs, w(gen)));
    }
    Hypergraph h(n, std::move(edges));
    if (hsp::is_connected(h)) return h;
  }
}

hsp::WeightAssignment balanced(const Hypergraph& h) {
  return hsp::greedy_approx_balance(h, {}).assignment;
}

TEST(ImportanceSparsify, HugeLambdaKeepsEverything) {
  const auto h = random_hypergraph(1, 10, 30, 4);
  const auto wa = balanced(h);
  SamplingConfig cfg;
  cfg.lambda_scale = 1e12;
  const auto out = hsp::importance_sparsify(h, wa, cfg);
  EXPECT_EQ(out.sparsifier, h);
  for (std::size_t e = 0; e < h.num_edges(); ++e) EXPECT_EQ(out.origin[e], e);
  EXPECT_DOUBLE_EQ(out.expected_size(), 30.0);
}

TEST(ImportanceSparsify, KeptWeightsAreReweightedByProbability) {
  const auto h = random_hypergraph(2, 12, 60, 5);
  const auto wa = balanced(h);
  SamplingConfig cfg;
  cfg.lambda_scale = 0.002;
  const auto out = hsp::importance_sparsify(h, wa, cfg);
  ASSERT_EQ(out.diagnostics.size(), h.num_edges());
  std::size_t partial = 0;
  for (std::size_t k = 0; k < out.origin.size(); ++k) {
    const std::size_t e = out.origin[k];
    const double p = out.diagnostics[e].probability;
    EXPECT_TRUE(out.diagnostics[e].kept);
    EXPECT_EQ(out.sparsifier.edge(k).weight, h.edge(e).weight / p);
    EXPECT_EQ(out.sparsifier.edge(k).vertices, h.edge(e).vertices);
    if (p < 1.0) ++partial;
  }
  EXPECT_GT(partial, 0u);
}

TEST(ImportanceSparsify, ProbabilitiesFollowTheResistanceRule) {
  const auto h = random_hypergraph(3, 10, 40, 5);
  const auto wa = balanced(h);
  SamplingConfig cfg;
  cfg.lambda_scale = 0.01;
  const auto out = hsp::importance_sparsify(h, wa, cfg);
  const double lambda = cfg.lambda_scale * std::pow(std::log(10.0), 3) / std::pow(cfg.eps, 4);
  EXPECT_NEAR(hsp::importance_lambda(cfg, 10), lambda, 1e-12 * lambda);
  const auto& g = wa.graph();
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    double rmax = 0.0;
    for (std::size_t f : wa.slots(e)) {
      rmax = std::max(rmax, oracle::resistance(g, g.edge(f).u, g.edge(f).v));
    }
    EXPECT_NEAR(out.diagnostics[e].r_max, rmax, 1e-10 * rmax);
    EXPECT_NEAR(out.diagnostics[e].probability,
                std::min(1.0, h.edge(e).weight * rmax * lambda), 1e-10);
  }
}

TEST(ImportanceSparsify, SizeLawOnBalancedAssignments) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t n = 6 + s;
    const auto h = random_hypergraph(10 + s, n, 8 + 3 * s, std::min<std::size_t>(n, 6));
    const auto wa = balanced(h);
    const hsp::ResistanceOracle o(wa.graph());
    double total = 0.0;
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      total += h.edge(e).weight * hsp::r_max(wa, e, o);
    }
    EXPECT_LE(total, 2.0 * 4.0 * static_cast<double>(n));
  }
}

TEST(ImportanceSparsify, RejectsUnbalancedOrForeignAssignment) {
  const Hypergraph h(5, {make_hyperedge({0, 1, 2}, 3.0), make_hyperedge({0, 1}, 10.0),
                         make_hyperedge({2, 3}, 1.0), make_hyperedge({3, 4}, 1.0)});
  EXPECT_THROW(hsp::importance_sparsify(h, hsp::init_assignment(h), {}),
               hsp::PreconditionError);
  const auto other = random_hypergraph(4, 5, 6, 3);
  EXPECT_THROW(hsp::importance_sparsify(other, balanced(h), {}), hsp::InputError);
}

TEST(ImportanceSparsify, DeterministicPerSeed) {
  const auto h = random_hypergraph(5, 12, 60, 5);
  const auto wa = balanced(h);
  SamplingConfig cfg;
  cfg.lambda_scale = 0.003;
  cfg.seed = 77;
  const auto a = hsp::importance_sparsify(h, wa, cfg);
  const auto b = hsp::importance_sparsify(h, wa, cfg);
  EXPECT_EQ(a.sparsifier, b.sparsifier);
  EXPECT_EQ(a.origin, b.origin);
  cfg.seed = 78;
  const auto c = hsp::importance_sparsify(h, wa, cfg);
  EXPECT_NE(a.origin, c.origin);
}

TEST(ImportanceSparsify, UnbiasedAcrossSeeds) {
  const auto h = random_hypergraph(6, 10, 40, 5);
  const auto wa = balanced(h);
  SamplingConfig cfg;
  cfg.lambda_scale = 0.004;
  const std::size_t trials = 2000;
  std::vector<double> sum(h.num_edges(), 0.0);
  std::vector<double> p(h.num_edges());
  for (std::size_t t = 0; t < trials; ++t) {
    cfg.seed = t;
    const auto out = hsp::importance_sparsify(h, wa, cfg);
    for (std::size_t k = 0; k < out.origin.size(); ++k) {
      sum[out.origin[k]] += out.sparsifier.edge(k).weight;
    }
    if (t == 0) {
      for (std::size_t e = 0; e < h.num_edges(); ++e) p[e] = out.diagnostics[e].probability;
    }
  }
  std::size_t sampled = 0;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const double w = h.edge(e).weight;
    // Var(w/p * Bernoulli(p)) = w^2 (1 - p) / p.
    const double se = w * std::sqrt((1.0 - p[e]) / p[e] / static_cast<double>(trials));
    const double mean = sum[e] / static_cast<double>(trials);
    if (p[e] < 1.0) ++sampled;
    EXPECT_LE(std::abs(mean - w), 3.0 * se + 1e-12) << "hyperedge " << e;
  }
  EXPECT_GT(sampled, 10u);
}

TEST(ImportanceSparsify, KeepDecisionsPairwiseIndependent) {
  const auto h = random_hypergraph(7, 10, 30, 5);
  const auto wa = balanced(h);
  SamplingConfig cfg;
  cfg.lambda_scale = 0.004;
  const std::size_t trials = 1000;
  std::vector<std::vector<bool>> kept(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    cfg.seed = 1000 + t;
    const auto out = hsp::importance_sparsify(h, wa, cfg);
    for (const auto& d : out.diagnostics) kept[t].push_back(d.kept);
  }
  std::size_t tested = 0;
  std::size_t rejected = 0;
  for (std::size_t a = 0; a < h.num_edges(); ++a) {
    for (std::size_t b = a + 1; b < h.num_edges(); ++b) {
      double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        (kept[t][a] ? (kept[t][b] ? n11 : n10) : (kept[t][b] ? n01 : n00)) += 1.0;
      }
      const double ra = n11 + n10, rb = n01 + n00, ca = n11 + n01, cb = n10 + n00;
      if (std::min({ra, rb, ca, cb}) < 50.0) continue;
      const double N = static_cast<double>(trials);
      const double chi = N * std::pow(n11 * n00 - n10 * n01, 2) / (ra * rb * ca * cb);
      ++tested;
      if (chi > 10.83) ++rejected;  // 0.1% critical value, one degree of freedom
    }
  }
  ASSERT_GT(tested, 20u);
  // At the 0.1% level a handful of rejections could be chance; more is not.
  EXPECT_LE(rejected, 1 + tested / 200);
}

TEST(ImportanceSparsify, QualityImprovesWithLambdaScale) {
  const auto h = random_hypergraph(8, 10, 60, 5);
  const auto wa = balanced(h);
  hsp::ProbeOptions probes;
  probes.gaussian = 40;
  probes.rademacher = 40;
  probes.two_sparse = 40;
  std::vector<double> mean_violation;
  for (double scale : {0.0005, 0.001, 0.002, 0.004, 0.008}) {
    double total = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      SamplingConfig cfg;
      cfg.lambda_scale = scale;
      cfg.seed = s;
      const auto out = hsp::importance_sparsify(h, wa, cfg);
      const auto rep = hsp::probe_check(h, out.sparsifier, 0.5, probes, s);
      total += std::max(rep.worst_over() - 1.0, 1.0 - rep.worst_under());
    }
    mean_violation.push_back(total / 50.0);
  }
  for (std::size_t i = 1; i < mean_violation.size(); ++i) {
    EXPECT_LE(mean_violation[i], mean_violation[i - 1] * 1.05 + 1e-3) << "sweep point " << i;
  }
  EXPECT_LT(mean_violation.back(), mean_violation.front());
}

TEST(OrdinarySparsify, LargeLambdaReturnsInput) {
  std::mt19937_64 gen(1);
  const auto g = oracle::random_graph(gen, 15, 30);
  EXPECT_EQ(hsp::ordinary_sparsify(g, 0.5, 1e9, 3), g);
}

TEST(OrdinarySparsify, TreesAreKeptWhenLambdaAtLeastOne) {
  std::mt19937_64 gen(2);
  const auto tree = oracle::random_graph(gen, 20, 0);
  // w R = 1 on a bridge up to rounding, so p may sit a few ulps below 1.
  const auto kept = hsp::ordinary_sparsify(tree, 0.5, 1.0, 9);
  ASSERT_EQ(kept.num_edges(), tree.num_edges());
  for (std::size_t i = 0; i < tree.num_edges(); ++i) {
    EXPECT_EQ(kept.edge(i).u, tree.edge(i).u);
    EXPECT_EQ(kept.edge(i).v, tree.edge(i).v);
    EXPECT_NEAR(kept.edge(i).weight, tree.edge(i).weight, 1e-9 * tree.edge(i).weight);
  }
  // Below one every bridge has p = lambda.
  const auto half = hsp::ordinary_sparsify(tree, 0.5, 0.5, 9);
  EXPECT_LT(half.num_edges(), tree.num_edges());
  for (const auto& e : half.edges()) {
    bool found = false;
    for (const auto& f : tree.edges()) {
      if (f.u == e.u && f.v == e.v) {
        EXPECT_NEAR(e.weight, 2.0 * f.weight, 1e-9 * f.weight);
        found = true;
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(OrdinarySparsify, UnbiasedEdgeWeights) {
  const auto k = hsp::complete_graph(12);
  const std::size_t trials = 2000;
  std::vector<double> sum(k.num_edges(), 0.0);
  const double p = 0.5 * 2.0 / 12.0 * 3.0;  // lambda * w R with w R = 2/r
  for (std::size_t t = 0; t < trials; ++t) {
    const auto out = hsp::ordinary_sparsify(k, 0.5, 1.5, t);
    for (const auto& e : out.edges()) {
      for (std::size_t i = 0; i < k.num_edges(); ++i) {
        if (k.edge(i).u == e.u && k.edge(i).v == e.v) sum[i] += e.weight;
      }
    }
  }
  const double se = std::sqrt((1.0 - p) / p / static_cast<double>(trials));
  std::size_t outside = 0;
  for (double s : sum) outside += std::abs(s / static_cast<double>(trials) - 1.0) > 3.0 * se;
  EXPECT_LE(outside, 2u);  // 66 edges, about 0.2 expected beyond 3 SE
}

TEST(CliqueSurrogate, PairIsASingleEdge) {
  const auto s = hsp::clique_surrogate(2);
  ASSERT_EQ(s.num_edges(), 1u);
  EXPECT_EQ(s.edge(0).weight, 1.0);
}

TEST(CliqueSurrogate, CertifiedAgainstTheClique) {
  for (std::size_t r : {3u, 4u, 8u, 16u, 64u}) {
    const auto s = hsp::clique_surrogate(r);
    const auto range = hsp::pencil_ratio(hsp::complete_graph(r), s);
    EXPECT_GE(range.min, 0.5) << "r=" << r;
    EXPECT_LE(range.max, 1.5) << "r=" << r;
    EXPECT_LE(static_cast<double>(s.num_edges()), hsp::surrogate_edge_bound(r)) << "r=" << r;
  }
}

TEST(CliqueSurrogate, SameArgumentsSameGraph) {
  EXPECT_EQ(hsp::clique_surrogate(16, 0.5, 4), hsp::clique_surrogate(16, 0.5, 4));
}

TEST(UniformSparsify, RejectsSizesOutsideRange) {
  const auto h = sized_hypergraph(1, 10, 12, 2, 5);
  EXPECT_THROW(hsp::uniform_sparsify(h, 4, 0.5, {}), hsp::InputError);
}

TEST(UniformSparsify, TinyCKeepsEverythingHugeCThinsOut) {
  const auto h = sized_hypergraph(2, 10, 30, 2, 4);
  SamplingConfig cfg;
  cfg.c = 1e-6;
  const auto all = hsp::uniform_sparsify(h, 4, 0.5, cfg);
  EXPECT_EQ(all.sparsifier, h);
  cfg.c = 1e9;
  const auto few = hsp::uniform_sparsify(h, 4, 0.5, cfg);
  for (const auto& d : few.diagnostics) EXPECT_LT(d.probability, 1.0);
}

TEST(UniformSparsify, AnchorIsATwoApproximation) {
  const auto h = sized_hypergraph(3, 10, 25, 4, 8);
  SamplingConfig cfg;
  cfg.seed = 5;
  const auto out = hsp::uniform_sparsify(h, 8, 0.5, cfg);
  // Rebuild the same surrogate graph and take maxima over all pairs.
  const std::uint64_t sseed = hsp::rng::derive(cfg.seed, hsp::rng::tag("surrogate"));
  WeightedGraph g(10);
  for (const auto& e : h.edges()) {
    const auto s = hsp::clique_surrogate(e.size(), 0.5, sseed, cfg.surrogate_kappa);
    for (const auto& f : s.edges()) {
      g.add_edge(e.vertices[f.u], e.vertices[f.v], f.weight * e.weight);
    }
  }
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& vs = h.edge(i).vertices;
    double all_pairs = 0.0;
    for (auto a : vs) {
      for (auto b : vs) all_pairs = std::max(all_pairs, oracle::resistance(g, a, b));
    }
    EXPECT_GE(out.diagnostics[i].r_max, 0.5 * all_pairs - 1e-12);
    EXPECT_LE(out.diagnostics[i].r_max, all_pairs + 1e-12);
  }
}

TEST(UniformSparsify, KeptCountMatchesExpectation) {
  const auto h = sized_hypergraph(4, 10, 40, 2, 4);
  SamplingConfig cfg;
  cfg.c = 1000.0;
  double kept = 0.0;
  double expected = 0.0;
  double variance = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    cfg.seed = s;
    const auto out = hsp::uniform_sparsify(h, 4, 0.5, cfg);
    kept += static_cast<double>(out.sparsifier.num_edges());
    for (const auto& d : out.diagnostics) {
      expected += d.probability;
      variance += d.probability * (1.0 - d.probability);
    }
  }
  ASSERT_GT(variance, 200.0);
  EXPECT_NEAR(kept, expected, 3.0 * std::sqrt(variance));
}

TEST(SizeClass, HalfOpenPowersOfTwo) {
  EXPECT_EQ(hsp::size_class(2), 1u);
  EXPECT_EQ(hsp::size_class(3), 1u);
  EXPECT_EQ(hsp::size_class(4), 2u);
  EXPECT_EQ(hsp::size_class(5), 2u);
  EXPECT_EQ(hsp::size_class(8), 3u);
  EXPECT_EQ(hsp::size_class(9), 3u);
  EXPECT_THROW(hsp::size_class(1), hsp::InputError);
}

TEST(PolySizeSparsify, SingleClassEqualsUniform) {
  const auto h = sized_hypergraph(5, 12, 30, 4, 7);
  SamplingConfig cfg;
  cfg.c = 1e6;
  cfg.seed = 3;
  const auto poly = hsp::poly_size_sparsify(h, 0.5, cfg);
  const auto uni = hsp::uniform_sparsify(h, 8, 0.5, cfg);
  EXPECT_EQ(poly.sparsifier, uni.sparsifier);
  EXPECT_EQ(poly.origin, uni.origin);
}

TEST(PolySizeSparsify, MixedSizesLandInTheirClasses) {
  const Hypergraph h(12, {make_hyperedge({0, 1}, 1.0), make_hyperedge({1, 2, 3}, 1.0),
                          make_hyperedge({3, 4, 5, 6, 7}, 1.0),
                          make_hyperedge({7, 8, 9, 10, 11, 0, 1, 2, 3}, 1.0)});
  const auto out = hsp::poly_size_sparsify(h, 0.5, {});
  ASSERT_EQ(out.stages.size(), 3u);
  EXPECT_EQ(out.stages[0].name, "uniform r=4");
  EXPECT_EQ(out.stages[0].input_edges, 2u);
  EXPECT_EQ(out.stages[1].name, "uniform r=8");
  EXPECT_EQ(out.stages[1].input_edges, 1u);
  EXPECT_EQ(out.stages[2].name, "uniform r=16");
  EXPECT_EQ(out.stages[2].input_edges, 1u);
  EXPECT_EQ(out.sparsifier, h);
}

TEST(PolySizeSparsify, OutputWeightsStayInRange) {
  // Unit weights and c = 1: w/p never leaves [1, n^(10n)).
  const auto h = random_hypergraph(9, 12, 50, 6);
  const auto out = hsp::poly_size_sparsify(h, 0.5, {});
  const double log_cap = 10.0 * 12.0 * std::log(12.0);
  for (const auto& e : out.sparsifier.edges()) {
    EXPECT_GE(e.weight, 1.0);
    EXPECT_LT(std::log(e.weight), log_cap);
  }
}

TEST(WeightClass, HalfOpenIntervals) {
  const double n10 = std::pow(12.0, 10.0);
  EXPECT_EQ(hsp::weight_class(1.0, 12), 1u);
  EXPECT_EQ(hsp::weight_class(std::nextafter(n10, 0.0), 12), 1u);
  EXPECT_EQ(hsp::weight_class(n10, 12), 2u);
  EXPECT_EQ(hsp::weight_class(n10 * n10, 12), 3u);
  EXPECT_EQ(hsp::weight_class(std::pow(2.0, 10.0), 2), 2u);
  EXPECT_THROW(hsp::weight_class(0.5, 12), hsp::InputError);
}

TEST(FastSparsify, AllProbabilitiesOneIsTheIdentity) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto h = random_hypergraph(20 + s, 12, 40, 6);
    SamplingConfig cfg;
    cfg.lambda_scale = 1e12;
    cfg.c = 1e-6;
    cfg.seed = s;
    const auto out = hsp::fast_sparsify(h, cfg);
    EXPECT_EQ(out.sparsifier, h);
    const auto rep = hsp::probe_check(h, out.sparsifier, 0.5, {}, s);
    EXPECT_EQ(rep.worst_over(), 1.0);
    EXPECT_EQ(rep.worst_under(), 1.0);
  }
}

TEST(FastSparsify, OriginsPointAtSourceHyperedges) {
  const auto h = random_hypergraph(30, 12, 60, 6);
  SamplingConfig cfg;
  cfg.lambda_scale = 2e-5;
  cfg.seed = 4;
  const auto out = hsp::fast_sparsify(h, cfg);
  ASSERT_EQ(out.origin.size(), out.sparsifier.num_edges());
  ASSERT_LT(out.sparsifier.num_edges(), h.num_edges());
  for (std::size_t k = 0; k < out.origin.size(); ++k) {
    EXPECT_EQ(out.sparsifier.edge(k).vertices, h.edge(out.origin[k]).vertices);
    EXPECT_GE(out.sparsifier.edge(k).weight, h.edge(out.origin[k]).weight);
  }
}

TEST(FastSparsify, HandlesWidelySeparatedWeights) {
  hsp::GeneratorOptions o;
  o.model = hsp::Model::kSeparatedWeights;
  o.n = 8;
  o.m = 20;
  o.rank = 4;
  o.classes = 2;
  o.seed = 3;
  const auto h = hsp::generate(o).hypergraph;
  SamplingConfig cfg;
  cfg.lambda_scale = 1e12;
  cfg.c = 1e-6;
  EXPECT_EQ(hsp::fast_sparsify(h, cfg).sparsifier, h);
}

TEST(FastSparsify, DeterministicPerSeed) {
  const auto h = random_hypergraph(31, 12, 60, 6);
  SamplingConfig cfg;
  cfg.lambda_scale = 2e-5;
  cfg.seed = 12;
  const auto a = hsp::fast_sparsify(h, cfg);
  const auto b = hsp::fast_sparsify(h, cfg);
  EXPECT_EQ(a.sparsifier, b.sparsifier);
  EXPECT_EQ(a.origin, b.origin);
}

TEST(SamplingConfig, Validation) {
  SamplingConfig cfg;
  cfg.eps = 1.0;
  EXPECT_THROW(hsp::validate(cfg), hsp::InputError);
  cfg.eps = 0.5;
  cfg.lambda_scale = 0.0;
  EXPECT_THROW(hsp::validate(cfg), hsp::InputError);
  cfg.lambda_scale = 1.0;
  cfg.c = -1.0;
  EXPECT_THROW(hsp::validate(cfg), hsp::InputError);
}

}  // namespace

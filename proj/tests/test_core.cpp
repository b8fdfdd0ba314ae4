#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hypersparse/core.hpp"
#include "hypersparse/errors.hpp"
#include "hypersparse/generate.hpp"
#include "oracles.hpp"

namespace {

using hsp::Hypergraph;
using hsp::make_hyperedge;
using hsp::WeightedGraph;

Hypergraph random_hypergraph(std::uint64_t seed, std::size_t n, std::size_t m,
                             std::size_t rank) {
  hsp::GeneratorOptions o;
  o.n = n;
  o.m = m;
  o.rank = rank;
  o.seed = seed;
  auto h = hsp::generate(o).hypergraph;
  // Non-unit weights so cut sums are not just counts.
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> w(0.25, 4.0);
  std::vector<hsp::HyperEdge> edges = h.edges();
  for (auto& e : edges) e.weight = w(gen);
  return Hypergraph(n, std::move(edges));
}

TEST(HyperEnergy, SingleHyperedgeTakesLargestGap) {
  const Hypergraph h(3, {make_hyperedge({0, 1, 2}, 2.0)});
  const std::vector<double> x{0.0, 1.0, 3.0};
  EXPECT_DOUBLE_EQ(hsp::hyper_energy(h, x), 18.0);
}

TEST(HyperEnergy, ConstantVectorHasZeroEnergy) {
  const auto h = random_hypergraph(3, 9, 20, 4);
  const std::vector<double> x(9, 1.75);
  EXPECT_EQ(hsp::hyper_energy(h, x), 0.0);
}

TEST(HyperEnergy, IndicatorVectorsGiveCutWeights) {
  const auto h = random_hypergraph(11, 12, 30, 5);
  for (std::uint64_t mask = 0; mask < (1u << 12); ++mask) {
    std::vector<double> x(12);
    for (std::size_t v = 0; v < 12; ++v) x[v] = (mask >> v) & 1 ? 1.0 : 0.0;
    ASSERT_NEAR(hsp::hyper_energy(h, x), oracle::cut_weight(h, mask), 1e-12)
        << "mask " << mask;
  }
}

TEST(HyperEnergy, MatchesPairwiseMaximum) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> z;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto h = random_hypergraph(s, 15, 40, 6);
    std::vector<double> x(15);
    for (auto& xi : x) xi = z(gen);
    EXPECT_NEAR(hsp::hyper_energy(h, x), oracle::energy_pairs(h, x),
                1e-12 * oracle::energy_pairs(h, x));
  }
}

TEST(HyperEnergy, ShiftInvariantAndQuadraticInScale) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> z;
  const auto h = random_hypergraph(21, 10, 25, 4);
  std::vector<double> x(10);
  for (auto& xi : x) xi = z(gen);
  const double q = hsp::hyper_energy(h, x);
  auto shifted = x;
  for (auto& xi : shifted) xi += 3.5;
  auto scaled = x;
  for (auto& xi : scaled) xi *= -2.5;
  EXPECT_NEAR(hsp::hyper_energy(h, shifted), q, 1e-10 * q);
  EXPECT_NEAR(hsp::hyper_energy(h, scaled), 6.25 * q, 1e-10 * q);
}

TEST(HyperEnergy, RejectsWrongLength) {
  const Hypergraph h(3, {make_hyperedge({0, 1}, 1.0)});
  const std::vector<double> x{0.0, 1.0};
  EXPECT_THROW(hsp::hyper_energy(h, x), hsp::InputError);
}

TEST(GraphQuadratic, HandValues) {
  const WeightedGraph single(2, {{0, 1, 3.0}});
  EXPECT_DOUBLE_EQ(hsp::graph_quadratic(single, std::vector<double>{0.0, 2.0}), 12.0);
  EXPECT_EQ(hsp::graph_quadratic(single, std::vector<double>{4.0, 4.0}), 0.0);
  const WeightedGraph tri(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  EXPECT_DOUBLE_EQ(hsp::graph_quadratic(tri, std::vector<double>{0.0, 1.0, 2.0}), 6.0);
  EXPECT_THROW(hsp::graph_quadratic(tri, std::vector<double>{0.0}), hsp::InputError);
}

TEST(GraphQuadratic, AgreesWithEnergyOnRankTwoHypergraphs) {
  std::mt19937_64 gen(13);
  std::normal_distribution<double> z;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto h = random_hypergraph(s, 10, 20, 2);
    const auto g = hsp::as_graph(h);
    std::vector<double> x(10);
    for (auto& xi : x) xi = z(gen);
    EXPECT_NEAR(hsp::hyper_energy(h, x), hsp::graph_quadratic(g, x),
                1e-12 * hsp::graph_quadratic(g, x));
  }
}

TEST(Hyperedge, SortsAndDeduplicates) {
  const auto e = make_hyperedge({4, 1, 4, 2}, 1.5);
  EXPECT_EQ(e.vertices, (std::vector<hsp::Vertex>{1, 2, 4}));
  EXPECT_EQ(e.weight, 1.5);
}

TEST(Hypergraph, Accessors) {
  const Hypergraph h(5, {make_hyperedge({0, 1, 2}, 2.0), make_hyperedge({2, 3}, 0.5),
                         make_hyperedge({1, 3, 4, 0}, 1.0)});
  EXPECT_EQ(h.rank(), 4u);
  EXPECT_EQ(h.total_size(), 9u);
  EXPECT_DOUBLE_EQ(h.total_weight(), 3.5);
  EXPECT_EQ(h.min_weight(), 0.5);
  EXPECT_EQ(h.max_weight(), 2.0);
  EXPECT_THROW(Hypergraph(2, {make_hyperedge({0, 2}, 1.0)}), hsp::InputError);
}

TEST(WeightedGraph, RejectsSelfLoopsAndBadWeights) {
  WeightedGraph g(3);
  EXPECT_THROW(g.add_edge(1, 1, 1.0), hsp::InputError);
  EXPECT_THROW(g.add_edge(0, 1, -1.0), hsp::InputError);
  EXPECT_THROW(g.add_edge(0, 3, 1.0), hsp::InputError);
  EXPECT_NO_THROW(g.add_edge(0, 1, 0.0));
}

TEST(Validate, ConnectedValidInputIsClean) {
  const auto d = hsp::validate(random_hypergraph(2, 8, 12, 3));
  EXPECT_TRUE(d.ok());
  EXPECT_TRUE(d.warnings.empty());
}

TEST(Validate, FlagsIsolatedVertex) {
  const Hypergraph h(4, {make_hyperedge({0, 1, 2}, 1.0)});
  const auto d = hsp::validate(h);
  EXPECT_TRUE(d.disconnected);
  EXPECT_FALSE(d.ok());
}

TEST(Validate, ReportsDuplicatesUndersizedAndBadWeights) {
  std::vector<hsp::HyperEdge> raw{{{0, 1, 1}, 1.0}, {{2}, 1.0}, {{1, 2}, -3.0},
                                  {{0, 2}, 1.0}};
  const Hypergraph h(3, raw);
  const auto d = hsp::validate(h);
  EXPECT_EQ(d.duplicate_vertex_edges, (std::vector<std::size_t>{0}));
  EXPECT_EQ(d.undersized_edges, (std::vector<std::size_t>{1}));
  EXPECT_EQ(d.nonpositive_weight_edges, (std::vector<std::size_t>{2}));
}

TEST(Normalize, DropsSizeOneEdgesWithWarning) {
  std::vector<hsp::HyperEdge> raw{{{1, 1}, 1.0}, {{0, 1}, 2.0}, {{2, 0, 2}, 1.0}};
  const auto norm = hsp::normalize(Hypergraph(3, raw));
  ASSERT_EQ(norm.hypergraph.num_edges(), 2u);
  EXPECT_EQ(norm.hypergraph.edge(1).vertices, (std::vector<hsp::Vertex>{0, 2}));
  EXPECT_EQ(norm.warnings.size(), 1u);
}

TEST(RequireValidConnected, RejectsDisconnected) {
  const Hypergraph h(4, {make_hyperedge({0, 1}, 1.0), make_hyperedge({2, 3}, 1.0)});
  EXPECT_THROW(hsp::require_valid_connected(h), hsp::ConnectivityError);
}

TEST(SplitComponents, PartitionsVerticesAndEdges) {
  const Hypergraph h(6, {make_hyperedge({0, 4}, 1.0), make_hyperedge({1, 2, 3}, 2.0),
                         make_hyperedge({4, 5}, 3.0)});
  const auto parts = hsp::split_components(h);
  std::size_t vertices = 0;
  std::size_t edges = 0;
  for (const auto& c : parts) {
    vertices += c.vertices.size();
    edges += c.hypergraph.num_edges();
    for (std::size_t i = 0; i < c.hypergraph.num_edges(); ++i) {
      const auto& orig = h.edge(c.edge_ids[i]);
      const auto& local = c.hypergraph.edge(i);
      EXPECT_EQ(orig.weight, local.weight);
      ASSERT_EQ(orig.size(), local.size());
      for (std::size_t k = 0; k < local.size(); ++k) {
        EXPECT_EQ(c.vertices[local.vertices[k]], orig.vertices[k]);
      }
    }
  }
  EXPECT_EQ(parts.size(), 2u);
  EXPECT_EQ(vertices, 6u);
  EXPECT_EQ(edges, 3u);
}

}  // namespace

#pragma once

// Seeded random instance generators. Every generated hypergraph is connected.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hypersparse/balancing.hpp"
#include "hypersparse/core.hpp"

namespace hsp {

enum class Model {
  kUniformRandom,
  kPlantedCliqueUnion,
  kPathPlusHyperedges,
  kSeparatedWeights,
};

Model parse_model(std::string_view name);
std::string_view model_name(Model model);

struct GeneratorOptions {
  Model model = Model::kUniformRandom;
  std::size_t n = 10;
  std::size_t m = 20;
  std::size_t rank = 3;
  std::uint64_t seed = 0;
  /// separated-weights only.
  std::size_t classes = 2;
  double alpha = 0.0;  // 0 selects n^10
  double beta = 0.0;   // 0 selects n^10
};

struct SeparatedManifest {
  double alpha = 1.0;
  double beta = 1.0;
  SeparatedPartition partition;
};

struct GeneratedInstance {
  Hypergraph hypergraph;
  std::optional<SeparatedManifest> manifest;  // separated-weights only
};

/// Throws InputError on infeasible parameters (rank outside [2, n], too few
/// hyperedges to connect n vertices, ...).
GeneratedInstance generate(const GeneratorOptions& options);

}  // namespace hsp

// Copyright 2026 The IFX Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IFX_GENERATOR_HPP_
#define IFX_GENERATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ifx/graph.hpp"

namespace ifx {

struct MotifSpec {
  std::string name;
  int node_count = 0;
  std::vector<Edge> edges;
};

MotifSpec CycleMotif(int size);
MotifSpec CliqueMotif(int size);
// Square with a roof: nodes 0-3 form the square, node 4 is the apex.
MotifSpec HouseMotif();

struct AttributeDistribution {
  std::vector<double> mean;
  std::vector<double> stddev;
};

// Planted-motif benchmark: every graph is an independent-edge random base
// graph plus its class motif, joined by a single bridge edge.
struct GeneratorConfig {
  int class_count = 3;
  int graphs_per_class = 100;
  int base_min_nodes = 20;
  int base_max_nodes = 50;
  double base_edge_prob = 0.1;
  std::vector<MotifSpec> motif_catalog;
  // One distribution per class for motif nodes, one for background nodes.
  std::vector<AttributeDistribution> motif_attributes;
  AttributeDistribution background_attributes;
  double noise_std = 0.1;
  std::uint64_t seed = 7;
  AttributeSchema schema;
  std::vector<std::string> class_names;
  double train_fraction = 0.70;
  double validation_fraction = 0.15;
};

/// 3 classes (5-cycle, house, 6-clique), 100 graphs per class, 6 attributes
/// in 3 concepts, seed 7.
GeneratorConfig DefaultGeneratorConfig();

void ValidateGeneratorConfig(const GeneratorConfig& config);

/// Deterministic in `config.seed`; graph i draws from its own stream so the
/// result does not depend on generation order.
Dataset GenerateDataset(const GeneratorConfig& config);

/// Per-class stratified split. Each class is shuffled with a seeded stream,
/// then cut at floor(train * m) and floor((train + validation) * m).
Splits StratifiedSplits(const std::vector<Graph>& graphs, int class_count, double train_fraction,
                        double validation_fraction, std::uint64_t seed);

}  // namespace ifx

#endif  // IFX_GENERATOR_HPP_

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

#include "ifx/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ifx/error.hpp"
#include "ifx/rng.hpp"

namespace ifx {

namespace {

constexpr std::uint64_t kSplitStream = 0x5350'4c49'54ULL;

}  // namespace

MotifSpec CycleMotif(int size) {
  MotifSpec motif{std::to_string(size) + "-cycle", size, {}};
  for (int i = 0; i < size; ++i) motif.edges.emplace_back(i, (i + 1) % size);
  motif.edges = CanonicalEdges(size, motif.edges);
  return motif;
}

MotifSpec CliqueMotif(int size) {
  MotifSpec motif{std::to_string(size) + "-clique", size, {}};
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) motif.edges.emplace_back(i, j);
  }
  return motif;
}

MotifSpec HouseMotif() {
  MotifSpec motif{"house", 5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {2, 4}, {3, 4}}};
  motif.edges = CanonicalEdges(5, motif.edges);
  return motif;
}

GeneratorConfig DefaultGeneratorConfig() {
  GeneratorConfig config;
  config.motif_catalog = {CycleMotif(5), HouseMotif(), CliqueMotif(6)};
  config.class_names = {"cycle", "house", "clique"};
  config.schema.attribute_names = {"intensity_mean",   "intensity_std",   "area",
                                   "eccentricity",     "texture_contrast", "texture_entropy"};
  config.schema.concepts = {{"intensity", {0, 1}}, {"morphology", {2, 3}}, {"texture", {4, 5}}};
  const int d = 6;
  config.background_attributes = {std::vector<double>(d, 0.0), std::vector<double>(d, 0.5)};
  // Class t raises its motif nodes on concept t.
  for (int t = 0; t < config.class_count; ++t) {
    AttributeDistribution motif{std::vector<double>(d, 0.0), std::vector<double>(d, 0.5)};
    motif.mean[2 * t] = 2.0;
    motif.mean[2 * t + 1] = 2.0;
    config.motif_attributes.push_back(std::move(motif));
  }
  return config;
}

void ValidateGeneratorConfig(const GeneratorConfig& config) {
  auto fail = [](const std::string& what) { Fail(ErrorKind::kValidation, "generator: " + what); };
  if (config.class_count < 1) fail("class_count must be at least 1");
  if (config.class_count != static_cast<int>(config.motif_catalog.size())) {
    fail("class_count (" + std::to_string(config.class_count) + ") differs from motif count (" +
         std::to_string(config.motif_catalog.size()) + ")");
  }
  if (config.graphs_per_class < 0) fail("graphs_per_class must be non-negative");
  if (config.base_min_nodes < 1 || config.base_max_nodes < config.base_min_nodes) {
    fail("base size range must satisfy 1 <= min <= max");
  }
  if (!(config.base_edge_prob > 0.0 && config.base_edge_prob < 1.0)) {
    fail("base_edge_prob must lie in (0, 1)");
  }
  if (!(config.noise_std >= 0.0)) fail("noise_std must be non-negative");
  for (const MotifSpec& motif : config.motif_catalog) {
    if (motif.node_count < 1) fail("motif '" + motif.name + "' has no nodes");
    if (motif.node_count > config.base_min_nodes) {
      fail("motif '" + motif.name + "' has " + std::to_string(motif.node_count) +
           " nodes, more than the minimum base size " + std::to_string(config.base_min_nodes));
    }
    CanonicalEdges(motif.node_count, motif.edges);
  }
  ValidateSchema(config.schema);
  const auto d = config.schema.attribute_names.size();
  auto check_distribution = [&](const AttributeDistribution& dist, const std::string& what) {
    if (dist.mean.size() != d || dist.stddev.size() != d) {
      fail(what + " must have " + std::to_string(d) + " means and stddevs");
    }
    for (double s : dist.stddev) {
      if (!(s >= 0.0)) fail(what + " has a negative stddev");
    }
  };
  if (static_cast<int>(config.motif_attributes.size()) != config.class_count) {
    fail("need one motif attribute distribution per class");
  }
  for (int t = 0; t < config.class_count; ++t) {
    check_distribution(config.motif_attributes[t], "motif attributes of class " + std::to_string(t));
  }
  check_distribution(config.background_attributes, "background attributes");
  if (static_cast<int>(config.class_names.size()) != config.class_count) {
    fail("need one class name per class");
  }
  if (config.train_fraction < 0.0 || config.validation_fraction < 0.0 ||
      config.train_fraction + config.validation_fraction > 1.0) {
    fail("split fractions must be non-negative and sum to at most 1");
  }
}

namespace {

Graph GenerateGraph(const GeneratorConfig& config, int label, std::uint64_t stream_seed) {
  Rng rng(stream_seed);
  const MotifSpec& motif = config.motif_catalog[label];
  const int base_n =
      static_cast<int>(rng.UniformInt(config.base_min_nodes, config.base_max_nodes));
  const int n = base_n + motif.node_count;

  // Random placement so node order carries no class information.
  std::vector<NodeId> position(n);
  std::iota(position.begin(), position.end(), 0);
  rng.Shuffle(position);
  const auto base_node = [&](int i) { return position[i]; };
  const auto motif_node = [&](int i) { return position[base_n + i]; };

  std::vector<Edge> edges;
  for (int i = 0; i < base_n; ++i) {
    for (int j = i + 1; j < base_n; ++j) {
      if (rng.Bernoulli(config.base_edge_prob)) edges.emplace_back(base_node(i), base_node(j));
    }
  }
  for (const auto& [u, v] : motif.edges) edges.emplace_back(motif_node(u), motif_node(v));
  const int bridge_motif = static_cast<int>(rng.UniformInt(0, motif.node_count - 1));
  const int bridge_base = static_cast<int>(rng.UniformInt(0, base_n - 1));
  edges.emplace_back(motif_node(bridge_motif), base_node(bridge_base));

  Graph graph;
  graph.node_count = n;
  graph.label = label;
  graph.edges = CanonicalEdges(n, std::move(edges));

  const int d = static_cast<int>(config.schema.attribute_names.size());
  graph.features.resize(n, d);
  auto draw_row = [&](NodeId node, const AttributeDistribution& dist) {
    for (int j = 0; j < d; ++j) {
      graph.features(node, j) = rng.Normal(dist.mean[j], dist.stddev[j]);
    }
  };
  for (int i = 0; i < base_n; ++i) draw_row(base_node(i), config.background_attributes);
  for (int i = 0; i < motif.node_count; ++i) {
    draw_row(motif_node(i), config.motif_attributes[label]);
  }
  if (config.noise_std > 0.0) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) graph.features(i, j) += rng.Normal(0.0, config.noise_std);
    }
  }

  for (int i = 0; i < motif.node_count; ++i) graph.motif_nodes.push_back(motif_node(i));
  std::sort(graph.motif_nodes.begin(), graph.motif_nodes.end());
  return graph;
}

}  // namespace

Splits StratifiedSplits(const std::vector<Graph>& graphs, int class_count, double train_fraction,
                        double validation_fraction, std::uint64_t seed) {
  Splits splits;
  Rng rng(DeriveSeed(seed, kSplitStream));
  for (int t = 0; t < class_count; ++t) {
    std::vector<int> members;
    for (int i = 0; i < static_cast<int>(graphs.size()); ++i) {
      if (graphs[i].label == t) members.push_back(i);
    }
    rng.Shuffle(members);
    const auto m = static_cast<double>(members.size());
    const auto train_end = static_cast<std::size_t>(std::floor(train_fraction * m + 1e-9));
    const auto val_end = static_cast<std::size_t>(
        std::floor((train_fraction + validation_fraction) * m + 1e-9));
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto& part = i < train_end ? splits.train : (i < val_end ? splits.validation : splits.test);
      part.push_back(members[i]);
    }
  }
  for (auto* part : {&splits.train, &splits.validation, &splits.test}) {
    std::sort(part->begin(), part->end());
  }
  return splits;
}

Dataset GenerateDataset(const GeneratorConfig& config) {
  ValidateGeneratorConfig(config);
  Dataset dataset;
  dataset.schema = config.schema;
  dataset.class_names = config.class_names;
  for (int t = 0; t < config.class_count; ++t) {
    for (int g = 0; g < config.graphs_per_class; ++g) {
      const auto index = static_cast<std::uint64_t>(t) * config.graphs_per_class + g;
      dataset.graphs.push_back(GenerateGraph(config, t, DeriveSeed(config.seed, index)));
    }
  }
  dataset.splits = StratifiedSplits(dataset.graphs, config.class_count, config.train_fraction,
                                    config.validation_fraction, config.seed);
  return dataset;
}

}  // namespace ifx

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

#ifndef IFX_GRAPH_HPP_
#define IFX_GRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ifx {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;
using NodeSet = std::vector<NodeId>;

// Undirected attributed graph. Edges are stored once with first < second and
// kept sorted; features has one row per node.
struct Graph {
  int node_count = 0;
  std::vector<Edge> edges;
  Eigen::MatrixXd features;
  int label = 0;
  NodeSet motif_nodes;

  int feature_dim() const { return static_cast<int>(features.cols()); }

  // Dense 0/1 adjacency.
  Eigen::MatrixXd Adjacency() const;

  bool operator==(const Graph& other) const;
};

// Normalizes an edge list (orders endpoints, sorts, drops duplicates) and
// rejects self-loops or out-of-range endpoints.
std::vector<Edge> CanonicalEdges(int node_count, std::vector<Edge> edges);

// Throws ErrorKind::kValidation describing the first broken invariant.
// `class_count` <= 0 skips the label check.
void ValidateGraph(const Graph& graph, int class_count, const std::string& context);

struct Concept {
  std::string name;
  std::vector<int> attributes;

  bool operator==(const Concept&) const = default;
};

// Node feature columns double as the evaluation attributes; concepts group
// columns that are scored together.
struct AttributeSchema {
  std::vector<std::string> attribute_names;
  std::vector<Concept> concepts;

  bool operator==(const AttributeSchema&) const = default;
};

void ValidateSchema(const AttributeSchema& schema);

struct Splits {
  std::vector<int> train;
  std::vector<int> validation;
  std::vector<int> test;

  bool operator==(const Splits&) const = default;
};

struct Dataset {
  std::vector<Graph> graphs;
  AttributeSchema schema;
  std::vector<std::string> class_names;
  Splits splits;

  int class_count() const { return static_cast<int>(class_names.size()); }
  int feature_dim() const { return static_cast<int>(schema.attribute_names.size()); }

  bool operator==(const Dataset& other) const;
};

void ValidateDataset(const Dataset& dataset);

/// Graph on `nodes` with every internal edge, restricted features and the
/// same label. Nodes are renumbered 0..|nodes|-1 in ascending original order;
/// motif nodes that survive are renumbered too.
Graph InducedSubgraph(const Graph& graph, NodeSet nodes);

/// The ceil(k * n) nodes with the largest mask values, ties broken towards
/// the smaller index. Returned in ascending index order.
NodeSet TopKNodes(std::span<const double> mask, double sparsity);
NodeSet TopKNodes(const Eigen::VectorXd& mask, double sparsity);

/// ceil(k * n) clamped to [1, n], robust to k * n landing a few ulps above an
/// integer.
int TopKCount(int node_count, double sparsity);

/// Nodes of [0, n) not in `nodes` (which must be sorted).
NodeSet Complement(int node_count, const NodeSet& nodes);

// Dataset file I/O (JSON). Load validates every graph and reports the
// offending record on failure.
void SaveDataset(const Dataset& dataset, const std::filesystem::path& path);
Dataset LoadDataset(const std::filesystem::path& path);
std::string DatasetToJson(const Dataset& dataset);
Dataset DatasetFromJson(const std::string& text);

}  // namespace ifx

#endif  // IFX_GRAPH_HPP_

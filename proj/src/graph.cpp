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

#include "ifx/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "ifx/error.hpp"
#include "ifx/io.hpp"

namespace ifx {

using nlohmann::json;

Eigen::MatrixXd Graph::Adjacency() const {
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(node_count, node_count);
  for (const auto& [u, v] : edges) {
    adjacency(u, v) = 1.0;
    adjacency(v, u) = 1.0;
  }
  return adjacency;
}

bool Graph::operator==(const Graph& other) const {
  return node_count == other.node_count && edges == other.edges && label == other.label &&
         motif_nodes == other.motif_nodes && features.rows() == other.features.rows() &&
         features.cols() == other.features.cols() && features == other.features;
}

std::vector<Edge> CanonicalEdges(int node_count, std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count) {
      Fail(ErrorKind::kValidation, "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                       ") has an endpoint outside [0, " +
                                       std::to_string(node_count) + ")");
    }
    if (u == v) Fail(ErrorKind::kValidation, "self-loop on node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void ValidateGraph(const Graph& graph, int class_count, const std::string& context) {
  auto fail = [&](const std::string& what) { Fail(ErrorKind::kValidation, context + ": " + what); };
  if (graph.node_count < 1) fail("node_count must be at least 1");
  if (graph.features.rows() != graph.node_count) {
    fail("features has " + std::to_string(graph.features.rows()) + " rows, expected " +
         std::to_string(graph.node_count));
  }
  if (!graph.features.allFinite()) fail("features contain non-finite values");
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto [u, v] = graph.edges[e];
    if (u < 0 || v < 0 || u >= graph.node_count || v >= graph.node_count) {
      fail("edge " + std::to_string(e) + " (" + std::to_string(u) + ", " + std::to_string(v) +
           ") has an endpoint outside [0, " + std::to_string(graph.node_count) + ")");
    }
    if (u >= v) fail("edge " + std::to_string(e) + " must satisfy u < v");
    if (e > 0 && !(graph.edges[e - 1] < graph.edges[e])) {
      fail("edges must be sorted and unique (edge " + std::to_string(e) + ")");
    }
  }
  if (graph.label < 0 || (class_count > 0 && graph.label >= class_count)) {
    fail("label " + std::to_string(graph.label) + " outside [0, " + std::to_string(class_count) +
         ")");
  }
  for (NodeId node : graph.motif_nodes) {
    if (node < 0 || node >= graph.node_count) {
      fail("motif node " + std::to_string(node) + " outside [0, " +
           std::to_string(graph.node_count) + ")");
    }
  }
}

void ValidateSchema(const AttributeSchema& schema) {
  const int d = static_cast<int>(schema.attribute_names.size());
  std::vector<bool> used(d, false);
  for (const Concept& group : schema.concepts) {
    if (group.attributes.empty()) {
      Fail(ErrorKind::kValidation, "concept '" + group.name + "' has no attributes");
    }
    for (int a : group.attributes) {
      if (a < 0 || a >= d) {
        Fail(ErrorKind::kValidation, "concept '" + group.name + "' references attribute " +
                                         std::to_string(a) + " outside [0, " +
                                         std::to_string(d) + ")");
      }
      if (used[a]) {
        Fail(ErrorKind::kValidation,
             "attribute " + std::to_string(a) + " belongs to more than one concept");
      }
      used[a] = true;
    }
  }
}

bool Dataset::operator==(const Dataset& other) const {
  return graphs == other.graphs && schema == other.schema && class_names == other.class_names &&
         splits == other.splits;
}

void ValidateDataset(const Dataset& dataset) {
  ValidateSchema(dataset.schema);
  const int d = dataset.feature_dim();
  for (std::size_t i = 0; i < dataset.graphs.size(); ++i) {
    const Graph& graph = dataset.graphs[i];
    const std::string context = "graph " + std::to_string(i);
    ValidateGraph(graph, dataset.class_count(), context);
    if (graph.feature_dim() != d) {
      Fail(ErrorKind::kValidation, context + ": feature width " +
                                       std::to_string(graph.feature_dim()) + ", schema declares " +
                                       std::to_string(d));
    }
  }
  std::vector<int> seen(dataset.graphs.size(), 0);
  for (const auto* part : {&dataset.splits.train, &dataset.splits.validation, &dataset.splits.test}) {
    for (int index : *part) {
      if (index < 0 || index >= static_cast<int>(dataset.graphs.size())) {
        Fail(ErrorKind::kValidation, "split references graph " + std::to_string(index) +
                                         " outside [0, " + std::to_string(dataset.graphs.size()) +
                                         ")");
      }
      if (seen[index]++ > 0) {
        Fail(ErrorKind::kValidation, "graph " + std::to_string(index) + " appears in two splits");
      }
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] == 0) {
      Fail(ErrorKind::kValidation, "graph " + std::to_string(i) + " is in no split");
    }
  }
}

Graph InducedSubgraph(const Graph& graph, NodeSet nodes) {
  if (nodes.empty()) Fail(ErrorKind::kInvalidArgument, "induced subgraph of an empty node set");
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<int> new_index(graph.node_count, -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0 || nodes[i] >= graph.node_count) {
      Fail(ErrorKind::kInvalidArgument, "node " + std::to_string(nodes[i]) + " outside graph");
    }
    new_index[nodes[i]] = static_cast<int>(i);
  }

  Graph sub;
  sub.node_count = static_cast<int>(nodes.size());
  sub.label = graph.label;
  sub.features.resize(sub.node_count, graph.features.cols());
  for (int i = 0; i < sub.node_count; ++i) sub.features.row(i) = graph.features.row(nodes[i]);
  for (const auto& [u, v] : graph.edges) {
    if (new_index[u] >= 0 && new_index[v] >= 0) sub.edges.emplace_back(new_index[u], new_index[v]);
  }
  // Order-preserving relabel keeps (u < v) and sortedness.
  for (NodeId node : graph.motif_nodes) {
    if (new_index[node] >= 0) sub.motif_nodes.push_back(new_index[node]);
  }
  return sub;
}

int TopKCount(int node_count, double sparsity) {
  const double scaled = sparsity * node_count;
  int count = static_cast<int>(std::ceil(scaled - 1e-9 * std::max(1.0, scaled)));
  return std::clamp(count, 1, node_count);
}

NodeSet TopKNodes(std::span<const double> mask, double sparsity) {
  const int n = static_cast<int>(mask.size());
  if (n == 0) Fail(ErrorKind::kInvalidArgument, "top-k of an empty mask");
  if (!(sparsity > 0.0 && sparsity <= 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "sparsity must lie in (0, 1]");
  }
  NodeSet order(n);
  std::iota(order.begin(), order.end(), 0);
  const int count = TopKCount(n, sparsity);
  std::partial_sort(order.begin(), order.begin() + count, order.end(), [&](NodeId a, NodeId b) {
    if (mask[a] != mask[b]) return mask[a] > mask[b];
    return a < b;
  });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

NodeSet TopKNodes(const Eigen::VectorXd& mask, double sparsity) {
  return TopKNodes(std::span<const double>(mask.data(), static_cast<std::size_t>(mask.size())),
                   sparsity);
}

NodeSet Complement(int node_count, const NodeSet& nodes) {
  NodeSet rest;
  rest.reserve(node_count - nodes.size());
  auto it = nodes.begin();
  for (NodeId i = 0; i < node_count; ++i) {
    while (it != nodes.end() && *it < i) ++it;
    if (it == nodes.end() || *it != i) rest.push_back(i);
  }
  return rest;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

json GraphToJson(const Graph& graph) {
  json edges = json::array();
  for (const auto& [u, v] : graph.edges) edges.push_back({u, v});
  json features = json::array();
  for (int i = 0; i < graph.features.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < graph.features.cols(); ++j) row.push_back(graph.features(i, j));
    features.push_back(std::move(row));
  }
  return json{{"n", graph.node_count},
              {"edges", std::move(edges)},
              {"features", std::move(features)},
              {"label", graph.label},
              {"motif_nodes", graph.motif_nodes}};
}

Graph GraphFromJson(const json& record, int feature_dim) {
  Graph graph;
  graph.node_count = record.at("n").get<int>();
  if (graph.node_count < 1) Fail(ErrorKind::kValidation, "n must be at least 1");
  for (const json& edge : record.at("edges")) {
    if (!edge.is_array() || edge.size() != 2) Fail(ErrorKind::kParse, "edge must be a pair");
    graph.edges.emplace_back(edge[0].get<int>(), edge[1].get<int>());
  }
  const json& rows = record.at("features");
  if (!rows.is_array()) Fail(ErrorKind::kParse, "features must be an array of rows");
  graph.features.resize(static_cast<Eigen::Index>(rows.size()), feature_dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != feature_dim) {
      Fail(ErrorKind::kValidation, "feature row " + std::to_string(i) + " must have " +
                                       std::to_string(feature_dim) + " entries");
    }
    for (int j = 0; j < feature_dim; ++j) graph.features(i, j) = rows[i][j].get<double>();
  }
  graph.label = record.at("label").get<int>();
  if (record.contains("motif_nodes") && !record.at("motif_nodes").is_null()) {
    graph.motif_nodes = record.at("motif_nodes").get<NodeSet>();
  }
  return graph;
}

}  // namespace

std::string DatasetToJson(const Dataset& dataset) {
  json concepts = json::array();
  for (const Concept& group : dataset.schema.concepts) {
    concepts.push_back({{"name", group.name}, {"attributes", group.attributes}});
  }
  json graphs = json::array();
  for (const Graph& graph : dataset.graphs) graphs.push_back(GraphToJson(graph));
  json document = {
      {"schema", {{"attribute_names", dataset.schema.attribute_names}, {"concepts", concepts}}},
      {"class_names", dataset.class_names},
      {"splits",
       {{"train", dataset.splits.train},
        {"validation", dataset.splits.validation},
        {"test", dataset.splits.test}}},
      {"graphs", std::move(graphs)},
  };
  return document.dump() + "\n";
}

Dataset DatasetFromJson(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, std::string("dataset is not valid JSON: ") + e.what());
  }

  Dataset dataset;
  try {
    const json& schema = document.at("schema");
    dataset.schema.attribute_names = schema.at("attribute_names").get<std::vector<std::string>>();
    for (const json& group : schema.at("concepts")) {
      dataset.schema.concepts.push_back(
          {group.at("name").get<std::string>(), group.at("attributes").get<std::vector<int>>()});
    }
    dataset.class_names = document.at("class_names").get<std::vector<std::string>>();
    const json& splits = document.at("splits");
    dataset.splits.train = splits.at("train").get<std::vector<int>>();
    dataset.splits.validation = splits.at("validation").get<std::vector<int>>();
    dataset.splits.test = splits.at("test").get<std::vector<int>>();
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, std::string("dataset header: ") + e.what());
  }

  const json* graphs = nullptr;
  try {
    graphs = &document.at("graphs");
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, std::string("dataset: ") + e.what());
  }
  const int d = dataset.feature_dim();
  for (std::size_t i = 0; i < graphs->size(); ++i) {
    const std::string context = "graph " + std::to_string(i);
    try {
      dataset.graphs.push_back(GraphFromJson((*graphs)[i], d));
    } catch (const json::exception& e) {
      Fail(ErrorKind::kParse, context + ": " + e.what());
    } catch (const Error& e) {
      Fail(e.kind(), context + ": " + e.what());
    }
  }
  ValidateDataset(dataset);
  return dataset;
}

void SaveDataset(const Dataset& dataset, const std::filesystem::path& path) {
  WriteFileAtomic(path, DatasetToJson(dataset));
}

Dataset LoadDataset(const std::filesystem::path& path) {
  return DatasetFromJson(ReadFile(path));
}

}  // namespace ifx

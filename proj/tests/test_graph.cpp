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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "ifx/error.hpp"
#include "ifx/generator.hpp"
#include "ifx/graph.hpp"
#include "ifx/io.hpp"
#include "ifx/rng.hpp"
#include "test_support.hpp"

namespace ifx {
namespace {

Graph Path(int n) {
  Graph g;
  g.node_count = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  g.features = Eigen::MatrixXd::Zero(n, 2);
  for (int i = 0; i < n; ++i) g.features(i, 0) = i;
  return g;
}

std::filesystem::path TempPath(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ifx_test_graph";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST_CASE("top-k picks the largest entries with ties to the lower index") {
  const std::vector<double> mask{0.9, 0.1, 0.5};
  CHECK(TopKNodes(mask, 0.34) == NodeSet{0, 2});
  CHECK(TopKNodes(mask, 1.0) == NodeSet{0, 1, 2});
  const std::vector<double> ties{0.5, 0.5, 0.5, 0.5};
  CHECK(TopKNodes(ties, 0.5) == NodeSet{0, 1});
  const std::vector<double> single{0.3};
  CHECK(TopKNodes(single, 0.01) == NodeSet{0});
}

TEST_CASE("top-k count is ceil(k n) clamped to [1, n]") {
  for (int n = 1; n <= 100; ++n) {
    for (int i = 1; i <= 100; ++i) {
      const double k = i / 100.0;
      const int expected = std::max(1, (i * n + 99) / 100);
      REQUIRE_MESSAGE(TopKCount(n, k) == expected, "n=" << n << " k=" << k);
    }
  }
  const std::vector<double> mask{0.1, 0.2};
  CHECK_THROWS_AS(TopKNodes(mask, 0.0), Error);
  CHECK_THROWS_AS(TopKNodes(mask, 1.5), Error);
}

TEST_CASE("induced subgraph keeps exactly the edges between kept nodes") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(0, 12));
    const Graph g = testing::RandomGraph(n, 0.4, 3, rng);
    NodeSet keep;
    for (int i = 0; i < n; ++i) {
      if (rng.Bernoulli(0.5)) keep.push_back(i);
    }
    if (keep.empty()) keep.push_back(0);
    const Graph sub = InducedSubgraph(g, keep);
    REQUIRE(sub.node_count == static_cast<int>(keep.size()));
    // Brute force: every pair of kept nodes, in kept order.
    std::vector<Edge> expected;
    for (std::size_t a = 0; a < keep.size(); ++a) {
      for (std::size_t b = a + 1; b < keep.size(); ++b) {
        const Edge e{keep[a], keep[b]};
        if (std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end()) {
          expected.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
      }
    }
    CHECK(sub.edges == expected);
    for (std::size_t a = 0; a < keep.size(); ++a) {
      CHECK(sub.features.row(static_cast<Eigen::Index>(a)) == g.features.row(keep[a]));
    }
  }
}

TEST_CASE("induced subgraph edge cases") {
  const Graph g = Path(4);
  const Graph all = InducedSubgraph(g, {0, 1, 2, 3});
  CHECK(all.edges == g.edges);
  CHECK(all.features == g.features);
  const Graph one = InducedSubgraph(g, {2});
  CHECK(one.node_count == 1);
  CHECK(one.edges.empty());
  CHECK_THROWS_AS(InducedSubgraph(g, {}), Error);
  CHECK_THROWS_AS(InducedSubgraph(g, {7}), Error);
}

TEST_CASE("complement") {
  CHECK(Complement(5, {1, 3}) == NodeSet{0, 2, 4});
  CHECK(Complement(2, {0, 1}).empty());
}

TEST_CASE("canonical edges sort, orient and deduplicate") {
  CHECK(CanonicalEdges(4, {{2, 1}, {0, 3}, {1, 2}}) == std::vector<Edge>{{0, 3}, {1, 2}});
  CHECK_THROWS_AS(CanonicalEdges(3, {{0, 3}}), Error);
  CHECK_THROWS_AS(CanonicalEdges(3, {{1, 1}}), Error);
}

TEST_CASE("dataset round trip is exact") {
  GeneratorConfig config = DefaultGeneratorConfig();
  config.graphs_per_class = 4;
  const Dataset dataset = GenerateDataset(config);
  const auto path = TempPath("roundtrip.json");
  SaveDataset(dataset, path);
  const Dataset loaded = LoadDataset(path);
  CHECK(loaded == dataset);
  CHECK(DatasetToJson(loaded) == DatasetToJson(dataset));
}

TEST_CASE("truncated dataset file is a parse error") {
  GeneratorConfig config = DefaultGeneratorConfig();
  config.graphs_per_class = 2;
  const std::string text = DatasetToJson(GenerateDataset(config));
  const auto path = TempPath("truncated.json");
  WriteFileAtomic(path, text.substr(0, text.size() / 2));
  try {
    LoadDataset(path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
  }
}

TEST_CASE("out-of-range edge names the graph") {
  GeneratorConfig config = DefaultGeneratorConfig();
  config.graphs_per_class = 2;
  Dataset dataset = GenerateDataset(config);
  std::string text = DatasetToJson(dataset);
  auto doc = nlohmann::json::parse(text);
  doc["graphs"][3]["edges"][0] = {0, 999};
  try {
    DatasetFromJson(doc.dump());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    CHECK(std::string(e.what()).find("graph 3") != std::string::npos);
  }
}

TEST_CASE("missing dataset file is an io error naming the path") {
  try {
    LoadDataset("/nonexistent/dir/data.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIo);
    CHECK(std::string(e.what()).find("/nonexistent/dir/data.json") != std::string::npos);
  }
}

}  // namespace
}  // namespace ifx

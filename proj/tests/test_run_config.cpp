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


#include <string>

#include "doctest.h"

#include "ifx/error.hpp"
#include "ifx/run_config.hpp"

namespace ifx {
namespace {

// Runs `body` and returns the message of the ifx::Error it throws.
template <typename F>
std::string ErrorOf(F&& body, ErrorKind expected = ErrorKind::kValidation) {
  try {
    body();
  } catch (const Error& e) {
    CHECK(e.kind() == expected);
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

bool Contains(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

TEST_CASE("empty config gives the defaults") {
  const RunConfig config = RunConfigFromJson("{}");
  CHECK(config.seed == 7);
  CHECK(config.generator.graphs_per_class == 100);
  CHECK(config.train.epochs == 60);
  CHECK(config.explainer.steps == 300);
  CHECK(config.explainers.size() == 5);
  CHECK(config.metrics.bins == 20);
  CHECK(config.explainer.sparsity_set == DefaultSparsitySet());
}

TEST_CASE("config overlays values and propagates the seed") {
  const RunConfig config = RunConfigFromJson(R"({
    "seed": 3,
    "worker_count": 2,
    "train": {"epochs": 5, "hidden_dims": [8]},
    "explainer": {"steps": 10, "explainers": ["ifx", "random"]},
    "generator": {"graphs_per_class": 4, "motif_catalog": [{"type": "cycle", "size": 4},
                  {"type": "clique", "size": 4}, {"type": "house"}]},
    "metrics": {"complement_weighting": "mask", "bins": 8}
  })");
  CHECK(config.seed == 3);
  CHECK(config.generator.seed == 3);
  CHECK(config.train.seed == 3);
  CHECK(config.explainer.seed == 3);
  CHECK(config.train.hidden_dims == std::vector<int>{8});
  CHECK(config.explainers == std::vector<std::string>{"ifx", "random"});
  CHECK(config.generator.motif_catalog[1].edges.size() == 6);
  CHECK(config.metrics.weighting == ComplementWeighting::kMask);
}

TEST_CASE("config round trips through json") {
  RunConfig config = RunConfigFromJson(R"({"seed": 11, "train": {"epochs": 9}})");
  const std::string text = RunConfigToJson(config);
  CHECK(RunConfigToJson(RunConfigFromJson(text)) == text);
}

TEST_CASE("config errors name the offending key") {
  CHECK(Contains(ErrorOf([] { RunConfigFromJson(R"({"train": {"epoch": 3}})"); }),
                 "train.epoch"));
  CHECK(Contains(ErrorOf([] { RunConfigFromJson(R"({"train": {"epochs": "many"}})"); }),
                 "train.epochs"));
  CHECK(Contains(ErrorOf([] { RunConfigFromJson(R"({"train": {"epochs": -1}})"); }),
                 "train.epochs"));
  CHECK(Contains(ErrorOf([] { RunConfigFromJson(R"({"explainer": {"explainers": ["shap"]}})"); }),
                 "explainer.explainers"));
  CHECK(Contains(ErrorOf([] { RunConfigFromJson(R"({"metrics": {"risk": [[0, 1], [1, 0]]}})"); }),
                 "metrics.risk"));
  CHECK(Contains(ErrorOf([] { RunConfigFromJson(R"({"generator": {"class_count": 2}})"); }),
                 "generator.class_count"));
  CHECK(Contains(ErrorOf([] { RunConfigFromJson(R"({"colour": 1})"); }), "colour"));
  CHECK(Contains(
      ErrorOf([] { RunConfigFromJson(R"({"generator": {"motif_catalog": [{"type": "star"}]}})"); }),
      "generator.motif_catalog[0].type"));
  ErrorOf([] { RunConfigFromJson("{"); }, ErrorKind::kParse);
  ErrorOf([] { LoadRunConfig("/nonexistent/config.json"); }, ErrorKind::kIo);
}

TEST_CASE("sparsity specs") {
  const auto range = ParseSparsitySpec("0.01:0.10:0.01");
  REQUIRE(range.size() == 10);
  CHECK(range == DefaultSparsitySet());
  CHECK(range[2] == 0.03);
  CHECK(ParseSparsitySpec("0.1,0.2,0.5") == std::vector<double>{0.1, 0.2, 0.5});
  CHECK(ParseSparsitySpec("0.3") == std::vector<double>{0.3});
  CHECK_THROWS_AS(ParseSparsitySpec("0.2,0.1"), Error);
  CHECK_THROWS_AS(ParseSparsitySpec("0:0.1:0.01"), Error);
  CHECK_THROWS_AS(ParseSparsitySpec("0.1:0.2:0"), Error);
  CHECK_THROWS_AS(ParseSparsitySpec("abc"), Error);
  CHECK_THROWS_AS(ParseSparsitySpec(""), Error);
}

TEST_CASE("explainer lists") {
  CHECK(ParseExplainerList("ifx,random") == std::vector<std::string>{"ifx", "random"});
  CHECK_THROWS_AS(ParseExplainerList("ifx,gnnx"), Error);
  CHECK_THROWS_AS(ParseExplainerList(""), Error);
}

}  // namespace
}  // namespace ifx

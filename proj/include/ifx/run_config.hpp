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

#ifndef IFX_RUN_CONFIG_HPP_
#define IFX_RUN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ifx/explainer.hpp"
#include "ifx/generator.hpp"
#include "ifx/gnn.hpp"
#include "ifx/metrics.hpp"

namespace ifx {

struct RunPaths {
  std::filesystem::path dataset = "data/dataset.json";
  std::filesystem::path model = "data/model.json";
  std::filesystem::path explanations_dir = "data/explanations";
  std::filesystem::path reports_dir = "data/reports";
};

struct MetricsConfig {
  int bins = 20;
  RiskMatrix risk;  // empty: all-ones off-diagonal
  std::vector<double> sparsity_set = DefaultSparsitySet();
  ComplementWeighting weighting = ComplementWeighting::kOneMinusMask;
};

// Everything a pipeline run needs. `seed` is the only source of randomness:
// SyncSeeds() copies it into the generator, train and explainer sections.
struct RunConfig {
  RunPaths paths;
  GeneratorConfig generator = DefaultGeneratorConfig();
  TrainConfig train;
  ExplainerConfig explainer;
  std::vector<std::string> explainers{"ifx", "mi", "cf", "gradient", "random"};
  MetricsConfig metrics;
  std::uint64_t seed = 7;
  int worker_count = 1;

  void SyncSeeds();
};

/// Overlays a JSON document on the defaults. Unknown keys and bad values
/// raise ErrorKind::kValidation naming the key ("train.epochs").
RunConfig RunConfigFromJson(const std::string& text);
RunConfig LoadRunConfig(const std::filesystem::path& path);
std::string RunConfigToJson(const RunConfig& config);

void ValidateRunConfig(const RunConfig& config);

/// "lo:hi:step" (inclusive) or a comma-separated list. Values are rounded to
/// 10 decimals so 0.01:0.10:0.01 yields exactly 0.01, 0.02, ...
std::vector<double> ParseSparsitySpec(std::string_view spec);

/// Comma-separated explainer names; rejects unknown names.
std::vector<std::string> ParseExplainerList(std::string_view spec);

}  // namespace ifx

#endif  // IFX_RUN_CONFIG_HPP_

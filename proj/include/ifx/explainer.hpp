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

#ifndef IFX_EXPLAINER_HPP_
#define IFX_EXPLAINER_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ifx/gnn.hpp"
#include "ifx/losses.hpp"

namespace ifx {

std::vector<double> DefaultSparsitySet();

struct ExplainerConfig {
  double beta = 0.05;
  double gamma = 0.1;
  int steps = 300;
  double step_size = 0.05;
  double init_logit_std = 0.1;
  std::vector<double> sparsity_set = DefaultSparsitySet();
  std::uint64_t seed = 0;
};

void ValidateExplainerConfig(const ExplainerConfig& config);

// Fractions must lie in (0, 1] and increase strictly.
void ValidateSparsitySet(const std::vector<double>& sparsity_set);

struct Explanation {
  std::string explainer_name;
  Eigen::VectorXd mask;
  std::vector<LossTerms> loss_trace;
  // Keyed by sparsity fraction; each set is TopKNodes(mask, k).
  std::map<double, NodeSet> hard_subgraphs;
  // Index into loss_trace of the returned mask (-1 when untraced).
  int best_step = -1;
};

/// Optimizes M = sigmoid(theta) by gradient descent on the information-flow
/// objective. The trace holds the losses at theta_0 .. theta_steps and the
/// returned mask is the one with the lowest total.
Explanation ExplainIfx(const GnnModel& model, const Graph& graph, const ExplainerConfig& config);

/// Same loop with -log f[M](y) as the fidelity term.
Explanation ExplainMi(const GnnModel& model, const Graph& graph, const ExplainerConfig& config);

/// Same loop with the guarded log f[1-M](y) as the fidelity term.
Explanation ExplainCf(const GnnModel& model, const Graph& graph, const ExplainerConfig& config);

/// |d log f[G](y) / dM_i| at M = 1, divided by its maximum.
Explanation ExplainGradient(const GnnModel& model, const Graph& graph,
                            const std::vector<double>& sparsity_set = DefaultSparsitySet());

/// Mask drawn i.i.d. uniform on [0, 1).
Explanation ExplainRandom(const Graph& graph, std::uint64_t seed,
                          const std::vector<double>& sparsity_set = DefaultSparsitySet());

/// The shared optimization loop, parametrized by objective.
Explanation OptimizeMask(const GnnModel& model, const Graph& graph, const ExplainerConfig& config,
                         Objective objective, std::string name);

inline constexpr std::string_view kExplainerNames[] = {"ifx", "mi", "cf", "gradient", "random"};

bool IsExplainerName(std::string_view name);

/// Dispatch by name with `config.seed` as the instance seed.
Explanation Explain(std::string_view name, const GnnModel& model, const Graph& graph,
                    const ExplainerConfig& config);

/// Explains `indices` of the dataset with `workers` threads. Instance i uses
/// seed DeriveSeed(config.seed, graph index), so output is independent of the
/// worker count. Results are in the order of `indices`.
std::vector<Explanation> ExplainBatch(std::string_view name, const GnnModel& model,
                                      const Dataset& dataset, const std::vector<int>& indices,
                                      const ExplainerConfig& config, int workers);

// One explainer's outputs over a split, as stored on disk.
struct ExplanationSet {
  std::string explainer_name;
  std::vector<int> graph_indices;
  std::vector<Explanation> explanations;
};

std::string ExplanationSetToJson(const ExplanationSet& set);
ExplanationSet ExplanationSetFromJson(const std::string& text);

// Formats a sparsity key the way it appears in files ("0.01").
std::string SparsityKey(double sparsity);

}  // namespace ifx

#endif  // IFX_EXPLAINER_HPP_

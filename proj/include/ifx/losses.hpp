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

#ifndef IFX_LOSSES_HPP_
#define IFX_LOSSES_HPP_

#include <variant>

#include <Eigen/Dense>

#include "ifx/gnn.hpp"

namespace ifx {

// sum_i -M_i log M_i - (1 - M_i) log(1 - M_i), with 0 log 0 = 0.
double EntropyLoss(const Eigen::VectorXd& mask);
// d/dM_i of EntropyLoss, log((1 - M_i) / M_i). Unbounded at 0 and 1.
Eigen::VectorXd EntropyLossGrad(const Eigen::VectorXd& mask);

double SizeLoss(const Eigen::VectorXd& mask);

/// Guarded information-flow term:
///   max[log f[1-M](y), min_{j != y} log f[1-M](j)] - log f[M](y).
/// With `minimax_guard` false the first term is the plain log f[1-M](y).
double FlowLoss(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask, int y,
                bool minimax_guard = true);

/// Same formula on precomputed log-probabilities of the two forward passes.
double FlowLossFromLogProbs(const Eigen::VectorXd& complement_log_probs,
                            const Eigen::VectorXd& explanatory_log_probs, int y,
                            bool minimax_guard = true);

/// max[log q(y), min_{j != y} log q(j)]. For a single class returns log q(y).
double GuardedComplementTerm(const Eigen::VectorXd& log_probs, int y, bool minimax_guard);

enum class Objective {
  kInformationFlow,     // flow term (both passes)
  kMutualInformation,   // -log f[M](y)
  kCounterfactual,      // guarded log f[1-M](y)
};

struct ObjectiveSpec {
  Objective objective = Objective::kInformationFlow;
  int target = 0;
  double beta = 0.05;
  double gamma = 0.1;
  bool minimax_guard = true;
};

struct LossTerms {
  double flow = 0.0;
  double size = 0.0;
  double entropy = 0.0;
  double total = 0.0;
};

/// flow + beta * size + gamma * entropy for the chosen objective.
LossTerms EvaluateObjective(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask,
                            const ObjectiveSpec& spec);

/// TotalLoss with the information-flow objective.
double TotalLoss(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask, int y,
                 double beta, double gamma);

struct CrossEntropySpec {
  int label = 0;
};

struct ConstantSpec {
  double value = 0.0;
};

using LossSpec = std::variant<CrossEntropySpec, ConstantSpec, ObjectiveSpec>;

struct LossGradient {
  double value = 0.0;
  LossTerms terms;  // filled for ObjectiveSpec
  Gradients grads;
};

/// Exact gradient of the loss with respect to all parameters and the mask.
/// Objective entropy gradients are only finite for mask entries in (0, 1).
/// When `include_regularizers` is false the size and entropy terms are left
/// out of the mask gradient (callers that differentiate them in another
/// parametrization add them back).
LossGradient Grad(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask,
                  const LossSpec& spec, bool include_regularizers = true);

}  // namespace ifx

#endif  // IFX_LOSSES_HPP_

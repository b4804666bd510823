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

#include "ifx/losses.hpp"

#include <cmath>

#include "ifx/error.hpp"

namespace ifx {

namespace {

double XLogX(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Class picked by the guarded complement term; its log-probability is the
// value of the term.
int GuardedComplementClass(const Eigen::VectorXd& log_probs, int y, bool minimax_guard) {
  if (!minimax_guard || log_probs.size() < 2) return y;
  int runner = -1;
  for (int j = 0; j < log_probs.size(); ++j) {
    if (j == y) continue;
    if (runner < 0 || log_probs[j] < log_probs[runner]) runner = j;
  }
  return log_probs[y] >= log_probs[runner] ? y : runner;
}

void CheckTarget(int y, int class_count) {
  if (y < 0 || y >= class_count) {
    Fail(ErrorKind::kInvalidArgument,
         "target class " + std::to_string(y) + " outside [0, " + std::to_string(class_count) + ")");
  }
}

}  // namespace

double EntropyLoss(const Eigen::VectorXd& mask) {
  double total = 0.0;
  for (double m : mask) total -= XLogX(m) + XLogX(1.0 - m);
  return total;
}

Eigen::VectorXd EntropyLossGrad(const Eigen::VectorXd& mask) {
  return ((1.0 - mask.array()) / mask.array()).log().matrix();
}

double SizeLoss(const Eigen::VectorXd& mask) { return mask.sum(); }

double GuardedComplementTerm(const Eigen::VectorXd& log_probs, int y, bool minimax_guard) {
  return log_probs[GuardedComplementClass(log_probs, y, minimax_guard)];
}

double FlowLossFromLogProbs(const Eigen::VectorXd& complement_log_probs,
                            const Eigen::VectorXd& explanatory_log_probs, int y,
                            bool minimax_guard) {
  return GuardedComplementTerm(complement_log_probs, y, minimax_guard) - explanatory_log_probs[y];
}

double FlowLoss(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask, int y,
                bool minimax_guard) {
  CheckTarget(y, model.class_count);
  const Eigen::VectorXd complement = Eigen::VectorXd::Ones(mask.size()) - mask;
  return FlowLossFromLogProbs(ForwardLogProbs(model, graph, complement),
                              ForwardLogProbs(model, graph, mask), y, minimax_guard);
}

LossTerms EvaluateObjective(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask,
                            const ObjectiveSpec& spec) {
  CheckTarget(spec.target, model.class_count);
  LossTerms terms;
  const Eigen::VectorXd complement = Eigen::VectorXd::Ones(mask.size()) - mask;
  switch (spec.objective) {
    case Objective::kInformationFlow:
      terms.flow = FlowLossFromLogProbs(ForwardLogProbs(model, graph, complement),
                                        ForwardLogProbs(model, graph, mask), spec.target,
                                        spec.minimax_guard);
      break;
    case Objective::kMutualInformation:
      terms.flow = -ForwardLogProbs(model, graph, mask)[spec.target];
      break;
    case Objective::kCounterfactual:
      terms.flow = GuardedComplementTerm(ForwardLogProbs(model, graph, complement), spec.target,
                                         spec.minimax_guard);
      break;
  }
  terms.size = SizeLoss(mask);
  terms.entropy = EntropyLoss(mask);
  terms.total = terms.flow + spec.beta * terms.size + spec.gamma * terms.entropy;
  return terms;
}

double TotalLoss(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask, int y,
                 double beta, double gamma) {
  return EvaluateObjective(model, graph, mask,
                           {Objective::kInformationFlow, y, beta, gamma, /*minimax_guard=*/true})
      .total;
}

namespace {

LossGradient ObjectiveGrad(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask,
                           const ObjectiveSpec& spec, bool include_regularizers) {
  CheckTarget(spec.target, model.class_count);
  const int n = graph.node_count;
  LossGradient out;
  out.grads = Gradients::ZerosLike(model, n);
  const int y = spec.target;

  const bool uses_explanatory = spec.objective != Objective::kCounterfactual;
  const bool uses_complement = spec.objective != Objective::kMutualInformation;
  double flow = 0.0;

  if (uses_explanatory) {
    const ForwardTrace trace = ForwardWithTrace(model, graph, mask);
    flow -= trace.log_probs[y];
    Eigen::VectorXd seed = Eigen::VectorXd::Zero(model.class_count);
    seed[y] = -1.0;
    out.grads.Accumulate(Backward(model, trace, seed));
  }
  if (uses_complement) {
    const Eigen::VectorXd complement = Eigen::VectorXd::Ones(n) - mask;
    const ForwardTrace trace = ForwardWithTrace(model, graph, complement);
    const int picked = GuardedComplementClass(trace.log_probs, y, spec.minimax_guard);
    flow += trace.log_probs[picked];
    Eigen::VectorXd seed = Eigen::VectorXd::Zero(model.class_count);
    seed[picked] = 1.0;
    Gradients g = Backward(model, trace, seed);
    g.mask = -g.mask;  // d(1 - M)/dM
    out.grads.Accumulate(g);
  }

  out.terms.flow = flow;
  out.terms.size = SizeLoss(mask);
  out.terms.entropy = EntropyLoss(mask);
  out.terms.total = flow + spec.beta * out.terms.size + spec.gamma * out.terms.entropy;
  out.value = out.terms.total;
  if (include_regularizers) {
    out.grads.mask.array() += spec.beta;
    if (spec.gamma != 0.0) out.grads.mask += spec.gamma * EntropyLossGrad(mask);
  }
  return out;
}

}  // namespace

LossGradient Grad(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask,
                  const LossSpec& spec, bool include_regularizers) {
  if (const auto* ce = std::get_if<CrossEntropySpec>(&spec)) {
    CheckTarget(ce->label, model.class_count);
    const ForwardTrace trace = ForwardWithTrace(model, graph, mask);
    Eigen::VectorXd seed = Eigen::VectorXd::Zero(model.class_count);
    seed[ce->label] = -1.0;
    LossGradient out;
    out.value = -trace.log_probs[ce->label];
    out.grads = Backward(model, trace, seed);
    return out;
  }
  if (const auto* constant = std::get_if<ConstantSpec>(&spec)) {
    LossGradient out;
    out.value = constant->value;
    out.grads = Gradients::ZerosLike(model, graph.node_count);
    return out;
  }
  return ObjectiveGrad(model, graph, mask, std::get<ObjectiveSpec>(spec), include_regularizers);
}

}  // namespace ifx

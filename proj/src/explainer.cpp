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

#include "ifx/explainer.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ifx/error.hpp"
#include "ifx/rng.hpp"
#include "serialization.hpp"

namespace ifx {

namespace {

constexpr std::uint64_t kLogitStream = 0x10617;
constexpr std::uint64_t kRandomMaskStream = 0x7a4d;

Eigen::VectorXd Sigmoid(const Eigen::VectorXd& logits) {
  return (1.0 + (-logits.array()).exp()).inverse().matrix();
}

void AttachHardSubgraphs(Explanation& explanation, const std::vector<double>& sparsity_set) {
  for (double k : sparsity_set) explanation.hard_subgraphs[k] = TopKNodes(explanation.mask, k);
}

}  // namespace

std::vector<double> DefaultSparsitySet() {
  std::vector<double> set;
  for (int i = 1; i <= 10; ++i) set.push_back(i / 100.0);
  return set;
}

void ValidateSparsitySet(const std::vector<double>& sparsity_set) {
  if (sparsity_set.empty()) Fail(ErrorKind::kValidation, "sparsity set is empty");
  for (std::size_t i = 0; i < sparsity_set.size(); ++i) {
    const double k = sparsity_set[i];
    if (!(k > 0.0 && k <= 1.0)) {
      Fail(ErrorKind::kValidation, "sparsity " + SparsityKey(k) + " outside (0, 1]");
    }
    if (i > 0 && !(k > sparsity_set[i - 1])) {
      Fail(ErrorKind::kValidation, "sparsity set must be strictly increasing");
    }
  }
}

void ValidateExplainerConfig(const ExplainerConfig& config) {
  if (!(config.beta >= 0.0) || !(config.gamma >= 0.0)) {
    Fail(ErrorKind::kValidation, "explainer: beta and gamma must be non-negative");
  }
  if (config.steps < 0) Fail(ErrorKind::kValidation, "explainer: steps must be non-negative");
  if (!(config.step_size > 0.0)) Fail(ErrorKind::kValidation, "explainer: step_size must be positive");
  if (!(config.init_logit_std >= 0.0)) {
    Fail(ErrorKind::kValidation, "explainer: init_logit_std must be non-negative");
  }
  ValidateSparsitySet(config.sparsity_set);
}

Explanation OptimizeMask(const GnnModel& model, const Graph& graph, const ExplainerConfig& config,
                         Objective objective, std::string name) {
  ValidateExplainerConfig(config);
  const int n = graph.node_count;
  const ObjectiveSpec spec{objective, Predict(model, graph), config.beta, config.gamma, true};

  Rng rng(DeriveSeed(config.seed, kLogitStream));
  Eigen::VectorXd logits(n);
  for (int i = 0; i < n; ++i) logits[i] = rng.Normal(0.0, config.init_logit_std);

  Explanation explanation;
  explanation.explainer_name = std::move(name);
  explanation.loss_trace.reserve(config.steps + 1);
  double best_total = 0.0;
  for (int step = 0; step <= config.steps; ++step) {
    const Eigen::VectorXd mask = Sigmoid(logits);
    const LossGradient grad = Grad(model, graph, mask, spec, /*include_regularizers=*/false);
    if (!std::isfinite(grad.terms.total) || !grad.grads.mask.allFinite()) {
      Fail(ErrorKind::kNumeric, explanation.explainer_name + ": non-finite loss at step " +
                                    std::to_string(step));
    }
    explanation.loss_trace.push_back(grad.terms);
    if (step == 0 || grad.terms.total < best_total) {
      best_total = grad.terms.total;
      explanation.mask = mask;
      explanation.best_step = step;
    }
    if (step == config.steps) break;

    // Chain rule through the sigmoid. The entropy term is differentiated in
    // logit space, where d/dtheta = -theta * M (1 - M) stays finite.
    const Eigen::ArrayXd slope = mask.array() * (1.0 - mask.array());
    const Eigen::ArrayXd d_logits = grad.grads.mask.array() * slope + config.beta * slope -
                                    config.gamma * logits.array() * slope;
    logits -= config.step_size * d_logits.matrix();
  }
  AttachHardSubgraphs(explanation, config.sparsity_set);
  return explanation;
}

Explanation ExplainIfx(const GnnModel& model, const Graph& graph, const ExplainerConfig& config) {
  return OptimizeMask(model, graph, config, Objective::kInformationFlow, "ifx");
}

Explanation ExplainMi(const GnnModel& model, const Graph& graph, const ExplainerConfig& config) {
  return OptimizeMask(model, graph, config, Objective::kMutualInformation, "mi");
}

Explanation ExplainCf(const GnnModel& model, const Graph& graph, const ExplainerConfig& config) {
  return OptimizeMask(model, graph, config, Objective::kCounterfactual, "cf");
}

Explanation ExplainGradient(const GnnModel& model, const Graph& graph,
                            const std::vector<double>& sparsity_set) {
  ValidateSparsitySet(sparsity_set);
  const int y = Predict(model, graph);
  const ForwardTrace trace = ForwardWithTrace(model, graph, Eigen::VectorXd::Ones(graph.node_count));
  Eigen::VectorXd seed = Eigen::VectorXd::Zero(model.class_count);
  seed[y] = 1.0;
  Eigen::VectorXd saliency = Backward(model, trace, seed).mask.cwiseAbs();
  const double top = saliency.maxCoeff();
  if (top > 0.0) {
    saliency /= top;
  } else {
    saliency.setZero();
  }
  Explanation explanation;
  explanation.explainer_name = "gradient";
  explanation.mask = std::move(saliency);
  AttachHardSubgraphs(explanation, sparsity_set);
  return explanation;
}

Explanation ExplainRandom(const Graph& graph, std::uint64_t seed,
                          const std::vector<double>& sparsity_set) {
  ValidateSparsitySet(sparsity_set);
  Rng rng(DeriveSeed(seed, kRandomMaskStream));
  Explanation explanation;
  explanation.explainer_name = "random";
  explanation.mask.resize(graph.node_count);
  for (int i = 0; i < graph.node_count; ++i) explanation.mask[i] = rng.Uniform();
  AttachHardSubgraphs(explanation, sparsity_set);
  return explanation;
}

bool IsExplainerName(std::string_view name) {
  for (std::string_view known : kExplainerNames) {
    if (known == name) return true;
  }
  return false;
}

Explanation Explain(std::string_view name, const GnnModel& model, const Graph& graph,
                    const ExplainerConfig& config) {
  if (name == "ifx") return ExplainIfx(model, graph, config);
  if (name == "mi") return ExplainMi(model, graph, config);
  if (name == "cf") return ExplainCf(model, graph, config);
  if (name == "gradient") return ExplainGradient(model, graph, config.sparsity_set);
  if (name == "random") return ExplainRandom(graph, config.seed, config.sparsity_set);
  Fail(ErrorKind::kInvalidArgument, "unknown explainer '" + std::string(name) + "'");
}

std::vector<Explanation> ExplainBatch(std::string_view name, const GnnModel& model,
                                      const Dataset& dataset, const std::vector<int>& indices,
                                      const ExplainerConfig& config, int workers) {
  if (!IsExplainerName(name)) {
    Fail(ErrorKind::kInvalidArgument, "unknown explainer '" + std::string(name) + "'");
  }
  for (int index : indices) {
    if (index < 0 || index >= static_cast<int>(dataset.graphs.size())) {
      Fail(ErrorKind::kInvalidArgument, "graph index " + std::to_string(index) + " out of range");
    }
  }
  std::vector<Explanation> results(indices.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t p = next++; p < indices.size(); p = next++) {
      try {
        ExplainerConfig instance = config;
        instance.seed = DeriveSeed(config.seed, static_cast<std::uint64_t>(indices[p]));
        results[p] = Explain(name, model, dataset.graphs[indices[p]], instance);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = indices.size();
      }
    }
  };

  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(indices.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::string SparsityKey(double sparsity) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), sparsity);
  return ec == std::errc() ? std::string(buffer, end) : std::to_string(sparsity);
}

using nlohmann::json;

std::string ExplanationSetToJson(const ExplanationSet& set) {
  json records = json::array();
  for (std::size_t p = 0; p < set.explanations.size(); ++p) {
    const Explanation& e = set.explanations[p];
    json trace = json::array();
    for (const LossTerms& t : e.loss_trace) {
      trace.push_back({{"L_f", t.flow}, {"L_size", t.size}, {"L_ent", t.entropy}, {"total", t.total}});
    }
    json hard = json::object();
    for (const auto& [k, nodes] : e.hard_subgraphs) hard[SparsityKey(k)] = nodes;
    records.push_back({{"graph_index", set.graph_indices.at(p)},
                       {"explainer", e.explainer_name},
                       {"mask", detail::VectorToJson(e.mask)},
                       {"loss_trace", std::move(trace)},
                       {"best_step", e.best_step},
                       {"hard_subgraphs", std::move(hard)}});
  }
  return json{{"explainer", set.explainer_name}, {"explanations", std::move(records)}}.dump() + "\n";
}

ExplanationSet ExplanationSetFromJson(const std::string& text) {
  const json document = detail::ParseJson(text, "explanation file");
  ExplanationSet set;
  try {
    set.explainer_name = document.at("explainer").get<std::string>();
    for (const json& record : document.at("explanations")) {
      Explanation e;
      set.graph_indices.push_back(record.at("graph_index").get<int>());
      e.explainer_name = record.at("explainer").get<std::string>();
      e.mask = detail::VectorFromJson(record.at("mask"));
      for (const json& t : record.at("loss_trace")) {
        e.loss_trace.push_back({t.at("L_f").get<double>(), t.at("L_size").get<double>(),
                                t.at("L_ent").get<double>(), t.at("total").get<double>()});
      }
      e.best_step = record.value("best_step", -1);
      for (const auto& [key, nodes] : record.at("hard_subgraphs").items()) {
        e.hard_subgraphs[std::stod(key)] = nodes.get<NodeSet>();
      }
      set.explanations.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, std::string("explanation file: ") + e.what());
  }
  return set;
}

}  // namespace ifx

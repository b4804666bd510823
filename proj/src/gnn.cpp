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

#include "ifx/gnn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ifx/error.hpp"
#include "ifx/rng.hpp"

namespace ifx {

namespace {

std::vector<int> LayerDims(int feature_dim, const std::vector<int>& hidden_dims, int class_count) {
  std::vector<int> dims{feature_dim};
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(class_count);
  return dims;
}

Eigen::VectorXd ClampMask(const Eigen::VectorXd& mask) {
  return mask.cwiseMax(0.0).cwiseMin(1.0);
}

void CheckInput(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask) {
  if (graph.feature_dim() != model.feature_dim) {
    Fail(ErrorKind::kInvalidArgument, "graph has feature width " +
                                          std::to_string(graph.feature_dim()) + ", model expects " +
                                          std::to_string(model.feature_dim));
  }
  if (mask.size() != graph.node_count) {
    Fail(ErrorKind::kInvalidArgument, "mask has length " + std::to_string(mask.size()) +
                                          ", graph has " + std::to_string(graph.node_count) +
                                          " nodes");
  }
}

}  // namespace

GnnModel GnnModel::Zeros(int feature_dim, std::vector<int> hidden_dims, int class_count) {
  GnnModel model;
  model.feature_dim = feature_dim;
  model.class_count = class_count;
  model.hidden_dims = std::move(hidden_dims);
  const auto dims = LayerDims(feature_dim, model.hidden_dims, class_count);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    model.weights.push_back(Eigen::MatrixXd::Zero(dims[l], dims[l + 1]));
    model.biases.push_back(Eigen::VectorXd::Zero(dims[l + 1]));
  }
  return model;
}

GnnModel GnnModel::Glorot(int feature_dim, std::vector<int> hidden_dims, int class_count,
                          std::uint64_t seed) {
  GnnModel model = Zeros(feature_dim, std::move(hidden_dims), class_count);
  Rng rng(seed);
  for (auto& w : model.weights) {
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.Uniform(-limit, limit);
    }
  }
  return model;
}

bool GnnModel::operator==(const GnnModel& other) const {
  if (feature_dim != other.feature_dim || class_count != other.class_count ||
      hidden_dims != other.hidden_dims || weights.size() != other.weights.size() ||
      biases.size() != other.biases.size() || val_accuracy != other.val_accuracy) {
    return false;
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l].rows() != other.weights[l].rows() ||
        weights[l].cols() != other.weights[l].cols() || weights[l] != other.weights[l] ||
        biases[l].size() != other.biases[l].size() || biases[l] != other.biases[l]) {
      return false;
    }
  }
  return true;
}

void ValidateModel(const GnnModel& model) {
  if (model.feature_dim < 1 || model.class_count < 1) {
    Fail(ErrorKind::kValidation, "model: feature_dim and class_count must be positive");
  }
  const auto dims = LayerDims(model.feature_dim, model.hidden_dims, model.class_count);
  if (model.weights.size() + 1 != dims.size() || model.biases.size() + 1 != dims.size()) {
    Fail(ErrorKind::kValidation, "model: expected " + std::to_string(dims.size() - 1) + " layers");
  }
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    const std::string layer = "model: layer " + std::to_string(l);
    if (model.weights[l].rows() != dims[l] || model.weights[l].cols() != dims[l + 1]) {
      Fail(ErrorKind::kValidation, layer + " weight is " + std::to_string(model.weights[l].rows()) +
                                       "x" + std::to_string(model.weights[l].cols()) +
                                       ", expected " + std::to_string(dims[l]) + "x" +
                                       std::to_string(dims[l + 1]));
    }
    if (model.biases[l].size() != dims[l + 1]) {
      Fail(ErrorKind::kValidation, layer + " bias has the wrong length");
    }
    if (!model.weights[l].allFinite() || !model.biases[l].allFinite()) {
      Fail(ErrorKind::kValidation, layer + " has non-finite parameters");
    }
  }
}

Eigen::MatrixXd MaskedAdjacency(const Graph& graph, const Eigen::VectorXd& mask) {
  if (mask.size() != graph.node_count) {
    Fail(ErrorKind::kInvalidArgument, "mask length does not match node count");
  }
  const Eigen::VectorXd m = ClampMask(mask);
  Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(graph.node_count, graph.node_count);
  for (const auto& [u, v] : graph.edges) {
    inner(u, v) = m[u] * m[v];
    inner(v, u) = inner(u, v);
  }
  inner.diagonal() += m;
  Eigen::VectorXd scale(graph.node_count);
  for (int i = 0; i < graph.node_count; ++i) {
    const double degree = inner.row(i).sum();
    scale[i] = degree < kDegreeGuard ? 1.0 : 1.0 / std::sqrt(degree);
  }
  return scale.asDiagonal() * inner * scale.asDiagonal();
}

ForwardTrace ForwardWithTrace(const GnnModel& model, const Graph& graph,
                              const Eigen::VectorXd& mask) {
  CheckInput(model, graph, mask);
  const int n = graph.node_count;
  ForwardTrace trace;
  trace.mask = ClampMask(mask);
  const Eigen::VectorXd& m = trace.mask;

  trace.structure = graph.Adjacency();
  trace.inner = trace.structure.cwiseProduct(m * m.transpose());
  trace.inner.diagonal() += m;
  trace.inv_sqrt_degree.resize(n);
  trace.degree_guarded.assign(n, false);
  for (int i = 0; i < n; ++i) {
    const double degree = trace.inner.row(i).sum();
    if (degree < kDegreeGuard) {
      trace.degree_guarded[i] = true;
      trace.inv_sqrt_degree[i] = 1.0;
    } else {
      trace.inv_sqrt_degree[i] = 1.0 / std::sqrt(degree);
    }
  }
  trace.adjacency =
      trace.inv_sqrt_degree.asDiagonal() * trace.inner * trace.inv_sqrt_degree.asDiagonal();

  Eigen::MatrixXd hidden = graph.features;
  for (int l = 0; l < model.conv_layer_count(); ++l) {
    trace.layer_inputs.push_back(hidden);
    Eigen::MatrixXd pre = trace.adjacency * hidden * model.weights[l];
    pre.rowwise() += model.biases[l].transpose();
    hidden = pre.cwiseMax(0.0);
    trace.pre_activations.push_back(std::move(pre));
  }
  trace.final_hidden = std::move(hidden);

  trace.mask_sum = m.sum();
  const double denom = std::max(trace.mask_sum, kReadoutEpsilon);
  trace.readout = trace.final_hidden.transpose() * m / denom;
  trace.logits = model.weights.back().transpose() * trace.readout + model.biases.back();
  const double top = trace.logits.maxCoeff();
  const double log_norm = top + std::log((trace.logits.array() - top).exp().sum());
  trace.log_probs = trace.logits.array() - log_norm;
  trace.probs = trace.log_probs.array().exp();
  return trace;
}

Eigen::VectorXd Forward(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask) {
  return ForwardWithTrace(model, graph, mask).probs;
}

Eigen::VectorXd Forward(const GnnModel& model, const Graph& graph) {
  return Forward(model, graph, Eigen::VectorXd::Ones(graph.node_count));
}

Eigen::VectorXd ForwardLogProbs(const GnnModel& model, const Graph& graph,
                                const Eigen::VectorXd& mask) {
  return ForwardWithTrace(model, graph, mask).log_probs;
}

int ArgMax(const Eigen::VectorXd& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

int Predict(const GnnModel& model, const Graph& graph) { return ArgMax(Forward(model, graph)); }

Gradients Gradients::ZerosLike(const GnnModel& model, int node_count) {
  Gradients grads;
  for (const auto& w : model.weights) grads.weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  for (const auto& b : model.biases) grads.biases.push_back(Eigen::VectorXd::Zero(b.size()));
  grads.mask = Eigen::VectorXd::Zero(node_count);
  return grads;
}

void Gradients::Accumulate(const Gradients& other, double scale) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l] += scale * other.weights[l];
    biases[l] += scale * other.biases[l];
  }
  if (mask.size() == other.mask.size()) mask += scale * other.mask;
}

Gradients Backward(const GnnModel& model, const ForwardTrace& trace,
                   const Eigen::VectorXd& log_prob_grad) {
  const int n = static_cast<int>(trace.mask.size());
  const int layers = model.conv_layer_count();
  Gradients grads = Gradients::ZerosLike(model, n);
  const Eigen::VectorXd& m = trace.mask;

  // log-softmax
  const Eigen::VectorXd d_logits = log_prob_grad - trace.probs * log_prob_grad.sum();
  grads.weights[layers] = trace.readout * d_logits.transpose();
  grads.biases[layers] = d_logits;
  const Eigen::VectorXd d_readout = model.weights[layers] * d_logits;

  // mask-weighted mean readout
  const double denom = std::max(trace.mask_sum, kReadoutEpsilon);
  Eigen::MatrixXd d_hidden = m * d_readout.transpose() / denom;
  grads.mask = trace.final_hidden * d_readout / denom;
  if (trace.mask_sum > kReadoutEpsilon) {
    grads.mask.array() -= trace.readout.dot(d_readout) / denom;
  }

  Eigen::MatrixXd d_adjacency = Eigen::MatrixXd::Zero(n, n);
  for (int l = layers - 1; l >= 0; --l) {
    const Eigen::MatrixXd d_pre =
        d_hidden.cwiseProduct((trace.pre_activations[l].array() > 0.0).cast<double>().matrix());
    const Eigen::MatrixXd& input = trace.layer_inputs[l];
    const Eigen::MatrixXd propagated = trace.adjacency * input;
    grads.weights[l] = propagated.transpose() * d_pre;
    grads.biases[l] = d_pre.colwise().sum().transpose();
    const Eigen::MatrixXd d_propagated = d_pre * model.weights[l].transpose();
    d_adjacency += d_propagated * input.transpose();
    if (l > 0) d_hidden = trace.adjacency.transpose() * d_propagated;
  }

  // A_hat = S inner S with S = diag(deg^{-1/2}), deg = rowsum(inner).
  const Eigen::VectorXd& s = trace.inv_sqrt_degree;
  Eigen::MatrixXd d_inner = s.asDiagonal() * d_adjacency * s.asDiagonal();
  const Eigen::MatrixXd weighted = d_adjacency.cwiseProduct(trace.inner);
  const Eigen::VectorXd d_scale = weighted * s + weighted.transpose() * s;
  for (int i = 0; i < n; ++i) {
    if (trace.degree_guarded[i]) continue;
    const double d_degree = -0.5 * s[i] * s[i] * s[i] * d_scale[i];
    d_inner.row(i).array() += d_degree;
  }

  // inner_ij = A_ij M_i M_j (i != j), inner_ii = M_i.
  const Eigen::MatrixXd d_edges = d_inner.cwiseProduct(trace.structure);
  grads.mask += d_edges * m + d_edges.transpose() * m + d_inner.diagonal();
  return grads;
}

double CrossEntropyWithGrad(const GnnModel& model, const Graph& graph, int label,
                            Gradients* grads) {
  const ForwardTrace trace = ForwardWithTrace(model, graph, Eigen::VectorXd::Ones(graph.node_count));
  if (grads != nullptr) {
    Eigen::VectorXd seed = Eigen::VectorXd::Zero(model.class_count);
    seed[label] = -1.0;
    *grads = Backward(model, trace, seed);
  }
  return -trace.log_probs[label];
}

double Accuracy(const GnnModel& model, const Dataset& dataset, const std::vector<int>& indices) {
  if (indices.empty()) return 0.0;
  int correct = 0;
  for (int index : indices) {
    const Graph& graph = dataset.graphs[index];
    if (Predict(model, graph) == graph.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(indices.size());
}

TrainResult Train(const Dataset& dataset, const TrainConfig& config,
                  const std::function<void(const EpochStats&)>& on_epoch) {
  if (dataset.splits.train.empty()) Fail(ErrorKind::kInvalidArgument, "train split is empty");
  if (config.batch_size < 1 || config.epochs < 0) {
    Fail(ErrorKind::kInvalidArgument, "train: batch_size must be positive, epochs non-negative");
  }
  for (int h : config.hidden_dims) {
    if (h < 1) Fail(ErrorKind::kInvalidArgument, "train: hidden dims must be positive");
  }

  TrainResult result;
  GnnModel model = GnnModel::Glorot(dataset.feature_dim(), config.hidden_dims,
                                    dataset.class_count(), DeriveSeed(config.seed, 0));
  model.train_config = config;
  // An empty validation split falls back to the train split for selection.
  const std::vector<int>& selection =
      dataset.splits.validation.empty() ? dataset.splits.train : dataset.splits.validation;

  result.model = model;
  result.model.val_accuracy = Accuracy(model, dataset, selection);
  double best_accuracy = result.model.val_accuracy;

  Rng rng(DeriveSeed(config.seed, 1));
  std::vector<int> order = dataset.splits.train;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      Gradients batch = Gradients::ZerosLike(model, 0);
      Gradients sample;
      for (std::size_t b = start; b < end; ++b) {
        const Graph& graph = dataset.graphs[order[b]];
        const double loss = CrossEntropyWithGrad(model, graph, graph.label, &sample);
        if (!std::isfinite(loss)) {
          Fail(ErrorKind::kNumeric, "train: non-finite loss at epoch " + std::to_string(epoch) +
                                        " on graph " + std::to_string(order[b]));
        }
        loss_sum += loss;
        batch.Accumulate(sample);
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      for (std::size_t l = 0; l < model.weights.size(); ++l) {
        model.weights[l] -= config.learning_rate *
                            (inv * batch.weights[l] + config.weight_decay * model.weights[l]);
        model.biases[l] -= config.learning_rate * inv * batch.biases[l];
      }
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = loss_sum / static_cast<double>(order.size());
    stats.train_accuracy = Accuracy(model, dataset, dataset.splits.train);
    stats.validation_accuracy = Accuracy(model, dataset, selection);
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);
    if (stats.validation_accuracy > best_accuracy) {
      best_accuracy = stats.validation_accuracy;
      result.model = model;
      result.model.val_accuracy = best_accuracy;
      result.best_epoch = epoch;
    }
  }
  return result;
}

}  // namespace ifx

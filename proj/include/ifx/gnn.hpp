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

#ifndef IFX_GNN_HPP_
#define IFX_GNN_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ifx/graph.hpp"

namespace ifx {

inline constexpr double kDegreeGuard = 1e-12;
inline constexpr double kReadoutEpsilon = 1e-8;

struct TrainConfig {
  int epochs = 60;
  double learning_rate = 0.1;
  double weight_decay = 1e-4;
  std::uint64_t seed = 7;
  std::vector<int> hidden_dims{32, 32};
  int batch_size = 16;
};

// Graph convolutional classifier:
//   H_{l+1} = relu(A_hat H_l W_l + b_l)      for each hidden layer
//   r       = sum_i M_i H_L[i] / max(sum_i M_i, eps)
//   p       = softmax(r W_out + b_out)
// weights/biases hold the convolution layers followed by the output head.
struct GnnModel {
  int feature_dim = 0;
  int class_count = 0;
  std::vector<int> hidden_dims;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  TrainConfig train_config;
  double val_accuracy = 0.0;

  int conv_layer_count() const { return static_cast<int>(hidden_dims.size()); }

  static GnnModel Zeros(int feature_dim, std::vector<int> hidden_dims, int class_count);
  // Glorot-uniform weights, zero biases.
  static GnnModel Glorot(int feature_dim, std::vector<int> hidden_dims, int class_count,
                         std::uint64_t seed);

  bool operator==(const GnnModel& other) const;
};

void ValidateModel(const GnnModel& model);

/// D^{-1/2} (A o (M M^T) + diag(M)) D^{-1/2}; rows whose inner sum is below
/// kDegreeGuard use degree 1.
Eigen::MatrixXd MaskedAdjacency(const Graph& graph, const Eigen::VectorXd& mask);

/// Class probabilities f[G, M]. The mask is clamped to [0, 1].
Eigen::VectorXd Forward(const GnnModel& model, const Graph& graph, const Eigen::VectorXd& mask);
Eigen::VectorXd Forward(const GnnModel& model, const Graph& graph);

/// log f[G, M], computed with a stable log-softmax.
Eigen::VectorXd ForwardLogProbs(const GnnModel& model, const Graph& graph,
                                const Eigen::VectorXd& mask);

/// Argmax of the unmasked forward pass, ties to the smaller class.
int Predict(const GnnModel& model, const Graph& graph);
int ArgMax(const Eigen::VectorXd& values);

// Intermediate values kept for the backward pass.
struct ForwardTrace {
  Eigen::VectorXd mask;
  Eigen::MatrixXd structure;      // 0/1 adjacency A
  Eigen::MatrixXd inner;          // A o (M M^T) + diag(M)
  Eigen::VectorXd inv_sqrt_degree;
  std::vector<bool> degree_guarded;
  Eigen::MatrixXd adjacency;      // normalized
  std::vector<Eigen::MatrixXd> layer_inputs;  // H_0 .. H_{L-1}
  std::vector<Eigen::MatrixXd> pre_activations;
  Eigen::MatrixXd final_hidden;   // H_L
  double mask_sum = 0.0;
  Eigen::VectorXd readout;
  Eigen::VectorXd logits;
  Eigen::VectorXd log_probs;
  Eigen::VectorXd probs;
};

ForwardTrace ForwardWithTrace(const GnnModel& model, const Graph& graph,
                              const Eigen::VectorXd& mask);

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  Eigen::VectorXd mask;

  static Gradients ZerosLike(const GnnModel& model, int node_count);
  void Accumulate(const Gradients& other, double scale = 1.0);
};

/// Reverse-mode pass: given dL/d(log p) for the traced forward, returns dL
/// with respect to every parameter and to the mask. The mask gradient covers
/// its edge-weight, self-loop and readout uses.
Gradients Backward(const GnnModel& model, const ForwardTrace& trace,
                   const Eigen::VectorXd& log_prob_grad);

/// -log f[G](label) with all-ones mask, plus its gradients.
double CrossEntropyWithGrad(const GnnModel& model, const Graph& graph, int label,
                            Gradients* grads);

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double validation_accuracy = 0.0;
};

struct TrainResult {
  GnnModel model;
  std::vector<EpochStats> history;
  int best_epoch = 0;
};

/// Mini-batch gradient descent with L2 decay on the train split. Batches are
/// drawn from a seeded shuffle each epoch; returns the parameters with the
/// best validation accuracy (earliest epoch on ties).
TrainResult Train(const Dataset& dataset, const TrainConfig& config,
                  const std::function<void(const EpochStats&)>& on_epoch = {});

double Accuracy(const GnnModel& model, const Dataset& dataset, const std::vector<int>& indices);

void SaveModel(const GnnModel& model, const std::filesystem::path& path);
GnnModel LoadModel(const std::filesystem::path& path);
std::string ModelToJson(const GnnModel& model);
GnnModel ModelFromJson(const std::string& text);

}  // namespace ifx

#endif  // IFX_GNN_HPP_

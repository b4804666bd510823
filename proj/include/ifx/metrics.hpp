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

#ifndef IFX_METRICS_HPP_
#define IFX_METRICS_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ifx/explainer.hpp"
#include "ifx/gnn.hpp"
#include "ifx/graph.hpp"

namespace ifx {

// ---------------------------------------------------------------------------
// f-information
// ---------------------------------------------------------------------------

struct MaskedInput {
  const Graph* graph = nullptr;
  Eigen::VectorXd mask;
  int label = 0;
};

/// H_f(Y): mean over the batch labels of -log fbar(y), where fbar is the
/// batch mean of the masked forward outputs.
double FEntropy(const GnnModel& model, const std::vector<MaskedInput>& inputs);
/// Unmasked variant; labels come from the graphs.
double FEntropy(const GnnModel& model, const std::vector<Graph>& graphs);

/// H_f(Y|X): mean of -log f[x](label).
double FConditionalEntropy(const GnnModel& model, const std::vector<MaskedInput>& inputs);

/// H_f(Y) - H_f(Y|X). Can be negative for a poor classifier.
double FInformation(const GnnModel& model, const std::vector<MaskedInput>& inputs);

// ---------------------------------------------------------------------------
// Fidelity
// ---------------------------------------------------------------------------

struct FidelityPoint {
  double sparsity = 0.0;
  double fidelity_plus = 0.0;
  double fidelity_minus = 0.0;
  int retained = 0;
};

/// Indices (into `indices`) of graphs the model classifies correctly.
std::vector<int> RetainedPositions(const GnnModel& model, const Dataset& dataset,
                                   const std::vector<int>& indices);

/// Fidelity+ / Fidelity- at one sparsity over the correctly classified graphs
/// of `indices`. explanations[p] explains dataset.graphs[indices[p]].
FidelityPoint FidelityScores(const GnnModel& model, const Dataset& dataset,
                             const std::vector<int>& indices,
                             const std::vector<Explanation>& explanations, double sparsity);

std::vector<FidelityPoint> FidelityCurve(const GnnModel& model, const Dataset& dataset,
                                         const std::vector<int>& indices,
                                         const std::vector<Explanation>& explanations,
                                         const std::vector<double>& sparsity_set);

// ---------------------------------------------------------------------------
// Attribute aggregation and histograms
// ---------------------------------------------------------------------------

enum class ComplementWeighting {
  kOneMinusMask,  // weights 1 - M_i on the complement
  kMask,          // weights M_i, as the aggregation formula is printed
};

struct AggregatedAttributes {
  Eigen::VectorXd explanatory;
  std::optional<Eigen::VectorXd> complement;  // absent when the top-k set is every node
};

/// Mask-weighted mean of node attributes over the top-k set and over the
/// rest. A side whose weights sum to zero falls back to the plain mean.
AggregatedAttributes AggregateAttributes(const Graph& graph, const Eigen::VectorXd& mask,
                                         double sparsity,
                                         ComplementWeighting weighting =
                                             ComplementWeighting::kOneMinusMask);

struct HistogramPdf {
  std::vector<double> bin_edges;
  std::vector<double> densities;
  bool empty = false;

  int bin_count() const { return static_cast<int>(densities.size()); }
  double bin_width() const { return (bin_edges.back() - bin_edges.front()) / bin_count(); }
};

/// Equal-width bins on [lo, hi], out-of-range values clamped into the end
/// bins, normalized to a density.
HistogramPdf BuildHistogram(const std::vector<double>& values, int bins, double lo, double hi);

/// W1 between two densities on the same bins: sum_b |CDF_p(b) - CDF_q(b)| * width.
double Wasserstein1d(const HistogramPdf& p, const HistogramPdf& q);

/// Mean W1 over the attributes of one concept. hist_x[a] / hist_y[a] are the
/// two classes' histograms for attribute column a.
double ConceptDistance(const std::vector<HistogramPdf>& hist_x,
                       const std::vector<HistogramPdf>& hist_y, const Concept& group);

/// Trapezoid integral of d over the sparsity set divided by its span; a
/// single point returns its value.
double AucOverSparsity(const std::map<double, double>& values);

// ---------------------------------------------------------------------------
// Separability
// ---------------------------------------------------------------------------

// Symmetric, non-negative, zero diagonal.
using RiskMatrix = Eigen::MatrixXd;

RiskMatrix DefaultRiskMatrix(int class_count);
void ValidateRiskMatrix(const RiskMatrix& risk, int class_count);

struct SeparabilityOptions {
  int bins = 20;
  std::vector<double> sparsity_set = DefaultSparsitySet();
  RiskMatrix risk;  // empty -> DefaultRiskMatrix
  ComplementWeighting weighting = ComplementWeighting::kOneMinusMask;
};

struct PairScores {
  int class_x = 0;
  int class_y = 0;
  std::vector<double> concept_auc;  // D_c, one per concept
  // d_c^k per concept, keyed by sparsity.
  std::vector<std::map<double, double>> concept_distances;
  double max = 0.0;
  double ave = 0.0;
};

struct SideScores {
  std::vector<PairScores> pairs;
  double aggregated_max = 0.0;
  double aggregated_ave = 0.0;
  double risk_max = 0.0;
  double risk_ave = 0.0;
};

// `predictive` is the explanatory side (S), `counterfactual` the
// complement side (C).
struct SeparabilityReport {
  SideScores predictive;
  SideScores counterfactual;
  std::vector<double> sparsity_set;
  std::vector<std::string> concept_names;
  int retained = 0;
};

/// Scores over the correctly classified graphs of `indices`.
SeparabilityReport ComputeSeparability(const GnnModel& model, const Dataset& dataset,
                                       const std::vector<int>& indices,
                                       const std::vector<Explanation>& explanations,
                                       const SeparabilityOptions& options);

// ---------------------------------------------------------------------------
// Ground-truth recovery
// ---------------------------------------------------------------------------

/// ROC AUC of the mask ranking motif nodes above the rest; ties count half.
/// nullopt when the graph has no motif nodes or no background nodes.
std::optional<double> MotifRankingAuc(const Graph& graph, const Eigen::VectorXd& mask);

struct MotifRecovery {
  std::vector<std::optional<double>> per_graph;
  double mean = 0.0;
  int scored = 0;
};

MotifRecovery ComputeMotifRecovery(const Dataset& dataset, const std::vector<int>& indices,
                                   const std::vector<Explanation>& explanations);

}  // namespace ifx

#endif  // IFX_METRICS_HPP_

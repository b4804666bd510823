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

#include "ifx/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifx/error.hpp"

namespace ifx {

double FEntropy(const GnnModel& model, const std::vector<MaskedInput>& inputs) {
  if (inputs.empty()) Fail(ErrorKind::kInvalidArgument, "f-entropy of an empty batch");
  Eigen::VectorXd marginal = Eigen::VectorXd::Zero(model.class_count);
  for (const MaskedInput& input : inputs) marginal += Forward(model, *input.graph, input.mask);
  marginal /= static_cast<double>(inputs.size());
  double total = 0.0;
  for (const MaskedInput& input : inputs) total -= std::log(marginal[input.label]);
  return total / static_cast<double>(inputs.size());
}

double FEntropy(const GnnModel& model, const std::vector<Graph>& graphs) {
  std::vector<MaskedInput> inputs;
  inputs.reserve(graphs.size());
  for (const Graph& graph : graphs) {
    inputs.push_back({&graph, Eigen::VectorXd::Ones(graph.node_count), graph.label});
  }
  return FEntropy(model, inputs);
}

double FConditionalEntropy(const GnnModel& model, const std::vector<MaskedInput>& inputs) {
  if (inputs.empty()) Fail(ErrorKind::kInvalidArgument, "conditional f-entropy of an empty batch");
  double total = 0.0;
  for (const MaskedInput& input : inputs) {
    total -= ForwardLogProbs(model, *input.graph, input.mask)[input.label];
  }
  return total / static_cast<double>(inputs.size());
}

double FInformation(const GnnModel& model, const std::vector<MaskedInput>& inputs) {
  return FEntropy(model, inputs) - FConditionalEntropy(model, inputs);
}

std::vector<int> RetainedPositions(const GnnModel& model, const Dataset& dataset,
                                   const std::vector<int>& indices) {
  std::vector<int> kept;
  for (int p = 0; p < static_cast<int>(indices.size()); ++p) {
    const Graph& graph = dataset.graphs.at(indices[p]);
    if (Predict(model, graph) == graph.label) kept.push_back(p);
  }
  return kept;
}

namespace {

void CheckAligned(const std::vector<int>& indices, const std::vector<Explanation>& explanations,
                  const Dataset& dataset) {
  if (indices.size() != explanations.size()) {
    Fail(ErrorKind::kInvalidArgument, "got " + std::to_string(explanations.size()) +
                                          " explanations for " + std::to_string(indices.size()) +
                                          " graphs");
  }
  for (std::size_t p = 0; p < indices.size(); ++p) {
    if (explanations[p].mask.size() != dataset.graphs.at(indices[p]).node_count) {
      Fail(ErrorKind::kInvalidArgument,
           "explanation for graph " + std::to_string(indices[p]) + " has the wrong mask length");
    }
  }
}

}  // namespace

FidelityPoint FidelityScores(const GnnModel& model, const Dataset& dataset,
                             const std::vector<int>& indices,
                             const std::vector<Explanation>& explanations, double sparsity) {
  CheckAligned(indices, explanations, dataset);
  const std::vector<int> kept = RetainedPositions(model, dataset, indices);
  if (kept.empty()) Fail(ErrorKind::kInvalidArgument, "fidelity: no correctly classified graphs");

  int plus = 0;
  int minus = 0;
  for (int p : kept) {
    const Graph& graph = dataset.graphs[indices[p]];
    const int y = graph.label;
    const NodeSet top = TopKNodes(explanations[p].mask, sparsity);
    if (Predict(model, InducedSubgraph(graph, top)) == y) ++plus;
    const NodeSet rest = Complement(graph.node_count, top);
    const int without =
        rest.empty() ? ArgMax(Forward(model, graph, Eigen::VectorXd::Zero(graph.node_count)))
                     : Predict(model, InducedSubgraph(graph, rest));
    if (without == y) ++minus;
  }
  FidelityPoint point;
  point.sparsity = sparsity;
  point.retained = static_cast<int>(kept.size());
  point.fidelity_plus = static_cast<double>(plus) / point.retained;
  point.fidelity_minus = static_cast<double>(minus) / point.retained;
  return point;
}

std::vector<FidelityPoint> FidelityCurve(const GnnModel& model, const Dataset& dataset,
                                         const std::vector<int>& indices,
                                         const std::vector<Explanation>& explanations,
                                         const std::vector<double>& sparsity_set) {
  std::vector<FidelityPoint> curve;
  for (double k : sparsity_set) {
    curve.push_back(FidelityScores(model, dataset, indices, explanations, k));
  }
  return curve;
}

namespace {

// Weighted mean of feature rows; equal weights when the weights sum to 0.
Eigen::VectorXd WeightedMean(const Graph& graph, const NodeSet& nodes,
                             const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(graph.feature_dim());
  if (total > 0.0) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * graph.features.row(nodes[i]).transpose();
    }
    return sum / total;
  }
  for (NodeId node : nodes) sum += graph.features.row(node).transpose();
  return sum / static_cast<double>(nodes.size());
}

}  // namespace

AggregatedAttributes AggregateAttributes(const Graph& graph, const Eigen::VectorXd& mask,
                                         double sparsity, ComplementWeighting weighting) {
  if (mask.size() != graph.node_count) {
    Fail(ErrorKind::kInvalidArgument, "mask length does not match node count");
  }
  const NodeSet top = TopKNodes(mask, sparsity);
  std::vector<double> weights;
  for (NodeId node : top) weights.push_back(mask[node]);

  AggregatedAttributes out;
  out.explanatory = WeightedMean(graph, top, weights);
  const NodeSet rest = Complement(graph.node_count, top);
  if (!rest.empty()) {
    weights.clear();
    for (NodeId node : rest) {
      weights.push_back(weighting == ComplementWeighting::kOneMinusMask ? 1.0 - mask[node]
                                                                        : mask[node]);
    }
    out.complement = WeightedMean(graph, rest, weights);
  }
  return out;
}

HistogramPdf BuildHistogram(const std::vector<double>& values, int bins, double lo, double hi) {
  if (bins < 1) Fail(ErrorKind::kInvalidArgument, "histogram needs at least one bin");
  if (!(hi > lo)) Fail(ErrorKind::kInvalidArgument, "histogram range must satisfy lo < hi");
  HistogramPdf pdf;
  const double width = (hi - lo) / bins;
  pdf.bin_edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) pdf.bin_edges[b] = lo + width * b;
  pdf.bin_edges.back() = hi;
  pdf.densities.assign(bins, 0.0);
  if (values.empty()) {
    pdf.empty = true;
    return pdf;
  }
  for (double v : values) {
    int b = static_cast<int>(std::floor((v - lo) / width));
    pdf.densities[std::clamp(b, 0, bins - 1)] += 1.0;
  }
  const double scale = 1.0 / (static_cast<double>(values.size()) * width);
  for (double& d : pdf.densities) d *= scale;
  return pdf;
}

double Wasserstein1d(const HistogramPdf& p, const HistogramPdf& q) {
  if (p.bin_edges != q.bin_edges) {
    Fail(ErrorKind::kInvalidArgument, "Wasserstein distance needs identical bin edges");
  }
  if (p.empty || q.empty) {
    Fail(ErrorKind::kInvalidArgument, "Wasserstein distance of an empty histogram");
  }
  const double width = p.bin_width();
  double cdf_p = 0.0;
  double cdf_q = 0.0;
  double distance = 0.0;
  for (int b = 0; b < p.bin_count(); ++b) {
    cdf_p += p.densities[b] * width;
    cdf_q += q.densities[b] * width;
    distance += std::abs(cdf_p - cdf_q) * width;
  }
  return distance;
}

double ConceptDistance(const std::vector<HistogramPdf>& hist_x,
                       const std::vector<HistogramPdf>& hist_y, const Concept& group) {
  if (group.attributes.empty()) {
    Fail(ErrorKind::kInvalidArgument, "concept '" + group.name + "' has no attributes");
  }
  double total = 0.0;
  for (int a : group.attributes) total += Wasserstein1d(hist_x.at(a), hist_y.at(a));
  return total / static_cast<double>(group.attributes.size());
}

double AucOverSparsity(const std::map<double, double>& values) {
  if (values.empty()) Fail(ErrorKind::kInvalidArgument, "AUC over an empty sparsity set");
  if (values.size() == 1) return values.begin()->second;
  double area = 0.0;
  auto prev = values.begin();
  for (auto it = std::next(values.begin()); it != values.end(); prev = it++) {
    area += 0.5 * (it->first - prev->first) * (it->second + prev->second);
  }
  return area / (values.rbegin()->first - values.begin()->first);
}

RiskMatrix DefaultRiskMatrix(int class_count) {
  RiskMatrix risk = RiskMatrix::Ones(class_count, class_count);
  risk.diagonal().setZero();
  return risk;
}

void ValidateRiskMatrix(const RiskMatrix& risk, int class_count) {
  if (risk.rows() != class_count || risk.cols() != class_count) {
    Fail(ErrorKind::kValidation, "risk matrix must be " + std::to_string(class_count) + "x" +
                                     std::to_string(class_count));
  }
  for (int i = 0; i < class_count; ++i) {
    if (risk(i, i) != 0.0) Fail(ErrorKind::kValidation, "risk matrix diagonal must be zero");
    for (int j = 0; j < class_count; ++j) {
      if (!(risk(i, j) >= 0.0) || !std::isfinite(risk(i, j))) {
        Fail(ErrorKind::kValidation, "risk matrix entries must be finite and non-negative");
      }
      if (risk(i, j) != risk(j, i)) Fail(ErrorKind::kValidation, "risk matrix must be symmetric");
    }
  }
}

namespace {

// samples[t][k_index] = aggregated vectors of class t at sparsity k.
using SideSamples = std::vector<std::vector<std::vector<Eigen::VectorXd>>>;

SideScores ScoreSide(const SideSamples& samples, const std::vector<double>& sparsity_set,
                     const AttributeSchema& schema, const Eigen::VectorXd& lo,
                     const Eigen::VectorXd& hi, int bins, const RiskMatrix& risk,
                     const std::string& side_name) {
  const int classes = static_cast<int>(samples.size());
  const int d = static_cast<int>(lo.size());
  // hist[t][k][a]
  std::vector<std::vector<std::vector<HistogramPdf>>> hist(classes);
  for (int t = 0; t < classes; ++t) {
    for (std::size_t ki = 0; ki < sparsity_set.size(); ++ki) {
      const auto& vectors = samples[t][ki];
      if (vectors.empty()) {
        Fail(ErrorKind::kInvalidArgument, side_name + ": class " + std::to_string(t) +
                                              " has no retained samples at sparsity " +
                                              std::to_string(sparsity_set[ki]));
      }
      std::vector<HistogramPdf> per_attribute;
      for (int a = 0; a < d; ++a) {
        std::vector<double> values;
        values.reserve(vectors.size());
        for (const auto& v : vectors) values.push_back(v[a]);
        per_attribute.push_back(BuildHistogram(values, bins, lo[a], hi[a]));
      }
      hist[t].push_back(std::move(per_attribute));
    }
  }

  SideScores scores;
  for (int x = 0; x < classes; ++x) {
    for (int y = x + 1; y < classes; ++y) {
      PairScores pair;
      pair.class_x = x;
      pair.class_y = y;
      for (const Concept& group : schema.concepts) {
        std::map<double, double> by_k;
        for (std::size_t ki = 0; ki < sparsity_set.size(); ++ki) {
          by_k[sparsity_set[ki]] = ConceptDistance(hist[x][ki], hist[y][ki], group);
        }
        pair.concept_auc.push_back(AucOverSparsity(by_k));
        pair.concept_distances.push_back(std::move(by_k));
      }
      if (!pair.concept_auc.empty()) {
        pair.max = *std::max_element(pair.concept_auc.begin(), pair.concept_auc.end());
        double sum = 0.0;
        for (double v : pair.concept_auc) sum += v;
        pair.ave = sum / static_cast<double>(pair.concept_auc.size());
      }
      scores.aggregated_max += pair.max;
      scores.aggregated_ave += pair.ave;
      scores.risk_max += risk(x, y) * pair.max;
      scores.risk_ave += risk(x, y) * pair.ave;
      scores.pairs.push_back(std::move(pair));
    }
  }
  return scores;
}

}  // namespace

SeparabilityReport ComputeSeparability(const GnnModel& model, const Dataset& dataset,
                                       const std::vector<int>& indices,
                                       const std::vector<Explanation>& explanations,
                                       const SeparabilityOptions& options) {
  CheckAligned(indices, explanations, dataset);
  ValidateSparsitySet(options.sparsity_set);
  const int classes = dataset.class_count();
  const RiskMatrix risk = options.risk.size() == 0 ? DefaultRiskMatrix(classes) : options.risk;
  ValidateRiskMatrix(risk, classes);
  if (options.bins < 1) Fail(ErrorKind::kInvalidArgument, "separability: bins must be positive");

  const std::vector<int> kept = RetainedPositions(model, dataset, indices);
  const std::size_t ks = options.sparsity_set.size();
  SideSamples explanatory(classes, std::vector<std::vector<Eigen::VectorXd>>(ks));
  SideSamples complement(classes, std::vector<std::vector<Eigen::VectorXd>>(ks));

  const int d = dataset.feature_dim();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, -std::numeric_limits<double>::infinity());
  for (int p : kept) {
    const Graph& graph = dataset.graphs[indices[p]];
    for (std::size_t ki = 0; ki < ks; ++ki) {
      AggregatedAttributes agg = AggregateAttributes(graph, explanations[p].mask,
                                                     options.sparsity_set[ki], options.weighting);
      lo = lo.cwiseMin(agg.explanatory);
      hi = hi.cwiseMax(agg.explanatory);
      explanatory[graph.label][ki].push_back(std::move(agg.explanatory));
      if (agg.complement) {
        lo = lo.cwiseMin(*agg.complement);
        hi = hi.cwiseMax(*agg.complement);
        complement[graph.label][ki].push_back(std::move(*agg.complement));
      }
    }
  }
  // Degenerate ranges get a unit-wide window so the bins stay well defined.
  for (int a = 0; a < d; ++a) {
    if (!(hi[a] - lo[a] > 1e-12)) {
      const double centre = std::isfinite(lo[a]) ? lo[a] : 0.0;
      lo[a] = centre - 0.5;
      hi[a] = centre + 0.5;
    }
  }

  SeparabilityReport report;
  report.sparsity_set = options.sparsity_set;
  report.retained = static_cast<int>(kept.size());
  for (const Concept& group : dataset.schema.concepts) report.concept_names.push_back(group.name);
  report.predictive = ScoreSide(explanatory, options.sparsity_set, dataset.schema, lo, hi,
                                options.bins, risk, "explanatory side");
  report.counterfactual = ScoreSide(complement, options.sparsity_set, dataset.schema, lo, hi,
                                    options.bins, risk, "complement side");
  return report;
}

std::optional<double> MotifRankingAuc(const Graph& graph, const Eigen::VectorXd& mask) {
  if (mask.size() != graph.node_count) {
    Fail(ErrorKind::kInvalidArgument, "mask length does not match node count");
  }
  std::vector<bool> is_motif(graph.node_count, false);
  for (NodeId node : graph.motif_nodes) is_motif[node] = true;
  std::vector<double> positive;
  std::vector<double> negative;
  for (int i = 0; i < graph.node_count; ++i) {
    (is_motif[i] ? positive : negative).push_back(mask[i]);
  }
  if (positive.empty() || negative.empty()) return std::nullopt;
  double wins = 0.0;
  for (double p : positive) {
    for (double q : negative) {
      if (p > q) {
        wins += 1.0;
      } else if (p == q) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(positive.size()) * static_cast<double>(negative.size()));
}

MotifRecovery ComputeMotifRecovery(const Dataset& dataset, const std::vector<int>& indices,
                                   const std::vector<Explanation>& explanations) {
  CheckAligned(indices, explanations, dataset);
  MotifRecovery recovery;
  double sum = 0.0;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    auto score = MotifRankingAuc(dataset.graphs[indices[p]], explanations[p].mask);
    if (score) {
      sum += *score;
      ++recovery.scored;
    }
    recovery.per_graph.push_back(score);
  }
  recovery.mean = recovery.scored > 0 ? sum / recovery.scored : 0.0;
  return recovery;
}

}  // namespace ifx

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


#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ifx/error.hpp"
#include "ifx/metrics.hpp"
#include "test_support.hpp"

namespace ifx {
namespace {

// Single-node graph whose feature is `scale` times the one-hot of `hot`.
Graph OneHotGraph(int dim, int hot, double scale, int label) {
  Graph g;
  g.node_count = 1;
  g.features = Eigen::MatrixXd::Zero(1, dim);
  g.features(0, hot) = scale;
  g.label = label;
  return g;
}

// No convolution layers: the logits are W^T (masked mean of features) + b.
GnnModel LinearModel(const Eigen::MatrixXd& w) {
  GnnModel model = GnnModel::Zeros(static_cast<int>(w.rows()), {}, static_cast<int>(w.cols()));
  model.weights[0] = w;
  return model;
}

TEST_CASE("f-entropy of a uniform model is log T") {
  const GnnModel model = GnnModel::Zeros(3, {4}, 3);
  std::vector<Graph> graphs;
  for (int t = 0; t < 3; ++t) graphs.push_back(OneHotGraph(3, t, 1.0, t));
  CHECK(std::abs(FEntropy(model, graphs) - std::log(3.0)) <= 1e-12);
  std::vector<MaskedInput> inputs;
  for (const Graph& g : graphs) inputs.push_back({&g, Eigen::VectorXd::Ones(1), g.label});
  CHECK(std::abs(FConditionalEntropy(model, inputs) - std::log(3.0)) <= 1e-12);
  CHECK(std::abs(FInformation(model, inputs)) <= 1e-12);
  CHECK_THROWS_AS(FEntropy(model, std::vector<MaskedInput>{}), Error);
}

TEST_CASE("f-information of a near one-hot classifier on a balanced batch is log T") {
  const GnnModel model = LinearModel(50.0 * Eigen::MatrixXd::Identity(3, 3));
  std::vector<Graph> graphs;
  for (int t = 0; t < 3; ++t) graphs.push_back(OneHotGraph(3, t, 1.0, t));
  std::vector<MaskedInput> inputs;
  for (const Graph& g : graphs) inputs.push_back({&g, Eigen::VectorXd::Ones(1), g.label});
  CHECK(std::abs(FInformation(model, inputs) - std::log(3.0)) <= 1e-12);
}

TEST_CASE("f-entropy estimators match direct enumeration") {
  Rng rng(7);
  std::vector<Graph> graphs;
  for (int i = 0; i < 8; ++i) graphs.push_back(testing::RandomGraph(5, 0.5, 3, rng, i % 3));
  const GnnModel model = testing::RandomModel(3, {4}, 3, rng);
  std::vector<MaskedInput> inputs;
  for (const Graph& g : graphs) inputs.push_back({&g, testing::RandomMask(5, rng), g.label});
  std::vector<double> marginal(3, 0.0);
  double conditional = 0.0;
  for (const auto& input : inputs) {
    const auto p = testing::OracleForward(model, *input.graph, testing::ToStd(input.mask));
    for (int c = 0; c < 3; ++c) marginal[c] += p[c] / inputs.size();
    conditional -= std::log(p[input.label]) / inputs.size();
  }
  double entropy = 0.0;
  for (const auto& input : inputs) entropy -= std::log(marginal[input.label]) / inputs.size();
  CHECK(std::abs(FEntropy(model, inputs) - entropy) <= 1e-12);
  CHECK(std::abs(FConditionalEntropy(model, inputs) - conditional) <= 1e-12);
  CHECK(std::abs(FInformation(model, inputs) - (entropy - conditional)) <= 1e-12);
}

Graph TwoNode(double a0, double a1, double b0, double b1, int label) {
  Graph g;
  g.node_count = 2;
  g.features.resize(2, 2);
  g.features << a0, a1, b0, b1;
  g.label = label;
  return g;
}

Explanation MaskOnly(std::initializer_list<double> values) {
  Explanation e;
  e.mask.resize(values.size());
  int i = 0;
  for (double v : values) e.mask[i++] = v;
  return e;
}

Dataset TwoClassDataset(std::vector<Graph> graphs) {
  Dataset dataset;
  dataset.graphs = std::move(graphs);
  dataset.schema.attribute_names = {"a", "b"};
  dataset.schema.concepts = {{"all", {0, 1}}};
  dataset.class_names = {"zero", "one"};
  return dataset;
}

TEST_CASE("fidelity on a hand-built batch") {
  const GnnModel model = LinearModel(Eigen::MatrixXd::Identity(2, 2));
  // A: explanation keeps the decisive node, the rest alone flips.
  // B: explanation keeps the misleading node.
  // C: both halves keep the label.
  // D: misclassified, so dropped.
  const Dataset dataset = TwoClassDataset({TwoNode(10, 0, 0, 1, 0), TwoNode(0, 10, 1, 0, 1),
                                           TwoNode(10, 0, 1, 0, 0), TwoNode(10, 0, 0, 1, 1)});
  const std::vector<Explanation> explanations{MaskOnly({1, 0}), MaskOnly({0, 1}), MaskOnly({1, 0}),
                                              MaskOnly({1, 0})};
  const std::vector<int> indices{0, 1, 2, 3};
  CHECK(RetainedPositions(model, dataset, indices) == std::vector<int>{0, 1, 2});
  const FidelityPoint point = FidelityScores(model, dataset, indices, explanations, 0.5);
  CHECK(point.retained == 3);
  CHECK(std::abs(point.fidelity_plus - 2.0 / 3.0) <= 1e-15);
  CHECK(std::abs(point.fidelity_minus - 2.0 / 3.0) <= 1e-15);

  const FidelityPoint full = FidelityScores(model, dataset, indices, explanations, 1.0);
  CHECK(full.fidelity_plus == 1.0);
  const auto curve = FidelityCurve(model, dataset, indices, explanations, {0.5, 1.0});
  CHECK(curve.size() == 2);
  CHECK(curve[0].fidelity_plus == point.fidelity_plus);
}

TEST_CASE("attribute aggregation matches a weighted-mean oracle") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(0, 12));
    const Graph g = testing::RandomGraph(n, 0.3, 4, rng);
    const Eigen::VectorXd mask = testing::RandomMask(n, rng, 0.0, 1.0);
    const double k = rng.Uniform(0.05, 0.95);
    const NodeSet top = TopKNodes(mask, k);
    for (auto weighting : {ComplementWeighting::kOneMinusMask, ComplementWeighting::kMask}) {
      const AggregatedAttributes agg = AggregateAttributes(g, mask, k, weighting);
      std::vector<double> s(4, 0.0);
      std::vector<double> c(4, 0.0);
      double ws = 0.0;
      double wc = 0.0;
      for (int i = 0; i < n; ++i) {
        const bool in_top = std::find(top.begin(), top.end(), i) != top.end();
        const double w = in_top ? mask[i]
                                : (weighting == ComplementWeighting::kMask ? mask[i] : 1 - mask[i]);
        (in_top ? ws : wc) += w;
        for (int a = 0; a < 4; ++a) (in_top ? s : c)[a] += w * g.features(i, a);
      }
      for (int a = 0; a < 4; ++a) CHECK(std::abs(agg.explanatory[a] - s[a] / ws) <= 1e-12);
      if (static_cast<int>(top.size()) < n) {
        REQUIRE(agg.complement.has_value());
        for (int a = 0; a < 4; ++a) CHECK(std::abs((*agg.complement)[a] - c[a] / wc) <= 1e-12);
      } else {
        CHECK(!agg.complement.has_value());
      }
    }
  }
}

TEST_CASE("attribute aggregation edge cases") {
  Rng rng(13);
  const Graph g = testing::RandomGraph(6, 0.3, 3, rng);
  // Equal weights: plain means.
  const AggregatedAttributes equal = AggregateAttributes(g, Eigen::VectorXd::Constant(6, 0.5), 0.5);
  const Eigen::VectorXd top_mean = g.features.topRows(3).colwise().mean();
  const Eigen::VectorXd rest_mean = g.features.bottomRows(3).colwise().mean();
  CHECK((equal.explanatory - top_mean).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((*equal.complement - rest_mean).cwiseAbs().maxCoeff() <= 1e-12);
  // Zero total weight on the complement falls back to the plain mean.
  const AggregatedAttributes ones = AggregateAttributes(g, Eigen::VectorXd::Ones(6), 0.5);
  CHECK((*ones.complement - rest_mean).cwiseAbs().maxCoeff() <= 1e-12);
  // A single node is its own aggregate.
  Graph single = InducedSubgraph(g, {4});
  const AggregatedAttributes one = AggregateAttributes(single, Eigen::VectorXd::Constant(1, 0.3), 0.1);
  CHECK(one.explanatory == Eigen::VectorXd(single.features.row(0).transpose()));
  CHECK(!one.complement.has_value());
}

TEST_CASE("histogram densities integrate to one and clamp out-of-range values") {
  const HistogramPdf h = BuildHistogram({-5.0, 0.1, 0.5, 0.55, 0.99, 7.0}, 4, 0.0, 1.0);
  double mass = 0.0;
  for (double d : h.densities) mass += d * h.bin_width();
  CHECK(std::abs(mass - 1.0) <= 1e-12);
  CHECK(h.densities[0] == doctest::Approx(2.0 / 6.0 / 0.25));
  CHECK(h.densities[3] == doctest::Approx(2.0 / 6.0 / 0.25));
  CHECK(BuildHistogram({}, 3, 0.0, 1.0).empty);
  CHECK_THROWS_AS(BuildHistogram({1.0}, 3, 1.0, 1.0), Error);
}

HistogramPdf RandomHistogram(int bins, double lo, double hi, Rng& rng) {
  std::vector<double> values;
  const int count = 1 + static_cast<int>(rng.UniformInt(0, 40));
  const double centre = rng.Uniform(lo, hi);
  for (int i = 0; i < count; ++i) values.push_back(rng.Normal(centre, 0.3 * (hi - lo)));
  return BuildHistogram(values, bins, lo, hi);
}

TEST_CASE("wasserstein distance agrees with a transport oracle") {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int bins = 1 + static_cast<int>(rng.UniformInt(0, 15));
    const double lo = rng.Uniform(-3.0, 1.0);
    const double hi = lo + rng.Uniform(0.5, 4.0);
    const HistogramPdf p = RandomHistogram(bins, lo, hi, rng);
    const HistogramPdf q = RandomHistogram(bins, lo, hi, rng);
    CHECK(std::abs(Wasserstein1d(p, q) - testing::OracleTransportCost(p, q)) <= 1e-9);
  }
}

TEST_CASE("wasserstein distance is a metric") {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int bins = 1 + static_cast<int>(rng.UniformInt(0, 15));
    const HistogramPdf p = RandomHistogram(bins, 0.0, 2.0, rng);
    const HistogramPdf q = RandomHistogram(bins, 0.0, 2.0, rng);
    const HistogramPdf r = RandomHistogram(bins, 0.0, 2.0, rng);
    CHECK(Wasserstein1d(p, p) == 0.0);
    CHECK(Wasserstein1d(p, q) >= 0.0);
    CHECK(std::abs(Wasserstein1d(p, q) - Wasserstein1d(q, p)) <= 1e-12);
    CHECK(Wasserstein1d(p, r) <= Wasserstein1d(p, q) + Wasserstein1d(q, r) + 1e-12);
  }
}

TEST_CASE("wasserstein distance of point masses is their separation") {
  const HistogramPdf p = BuildHistogram({0.05}, 10, 0.0, 1.0);
  const HistogramPdf q = BuildHistogram({0.75}, 10, 0.0, 1.0);
  CHECK(std::abs(Wasserstein1d(p, q) - 0.7) <= 1e-12);
  CHECK_THROWS_AS(Wasserstein1d(p, BuildHistogram({0.5}, 5, 0.0, 1.0)), Error);
  CHECK_THROWS_AS(Wasserstein1d(p, BuildHistogram({}, 10, 0.0, 1.0)), Error);
}

TEST_CASE("concept distance averages its attributes") {
  const std::vector<HistogramPdf> x{BuildHistogram({0.05}, 10, 0, 1), BuildHistogram({0.05}, 10, 0, 1)};
  const std::vector<HistogramPdf> y{BuildHistogram({0.75}, 10, 0, 1), BuildHistogram({0.05}, 10, 0, 1)};
  CHECK(std::abs(ConceptDistance(x, y, {"both", {0, 1}}) - 0.35) <= 1e-12);
  CHECK(std::abs(ConceptDistance(x, y, {"first", {0}}) - 0.7) <= 1e-12);
}

TEST_CASE("area under the sparsity curve") {
  CHECK(AucOverSparsity({{0.01, 0.4}, {0.05, 0.4}, {0.1, 0.4}}) == doctest::Approx(0.4));
  CHECK(AucOverSparsity({{0.1, 0.1}, {0.2, 0.2}, {0.5, 0.5}}) == doctest::Approx(0.3));
  CHECK(AucOverSparsity({{0.3, 0.9}}) == 0.9);
  // Trapezoid oracle on an uneven grid.
  const std::map<double, double> values{{0.01, 0.2}, {0.02, 0.5}, {0.07, 0.1}, {0.10, 0.3}};
  const double area = 0.5 * 0.01 * 0.7 + 0.5 * 0.05 * 0.6 + 0.5 * 0.03 * 0.4;
  CHECK(std::abs(AucOverSparsity(values) - area / 0.09) <= 1e-12);
}

TEST_CASE("risk matrix validation") {
  const RiskMatrix risk = DefaultRiskMatrix(3);
  CHECK(risk(0, 0) == 0.0);
  CHECK(risk(1, 2) == 1.0);
  CHECK_NOTHROW(ValidateRiskMatrix(risk, 3));
  RiskMatrix asym = risk;
  asym(0, 1) = 2.0;
  CHECK_THROWS_AS(ValidateRiskMatrix(asym, 3), Error);
  RiskMatrix negative = risk;
  negative(0, 1) = negative(1, 0) = -1.0;
  CHECK_THROWS_AS(ValidateRiskMatrix(negative, 3), Error);
  CHECK_THROWS_AS(ValidateRiskMatrix(risk, 2), Error);
}

TEST_CASE("motif ranking auc") {
  Graph g;
  g.node_count = 6;
  g.features = Eigen::MatrixXd::Zero(6, 1);
  g.motif_nodes = {1, 4};
  Eigen::VectorXd indicator = Eigen::VectorXd::Zero(6);
  indicator[1] = indicator[4] = 1.0;
  CHECK(*MotifRankingAuc(g, indicator) == 1.0);
  CHECK(*MotifRankingAuc(g, Eigen::VectorXd::Ones(6) - indicator) == 0.0);
  CHECK(*MotifRankingAuc(g, Eigen::VectorXd::Constant(6, 0.3)) == 0.5);
  g.motif_nodes.clear();
  CHECK(!MotifRankingAuc(g, indicator).has_value());

  // Pair-count oracle with ties on coarse random masks.
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    Graph h;
    h.node_count = 8;
    h.features = Eigen::MatrixXd::Zero(8, 1);
    for (int i = 0; i < 8; ++i) {
      if (rng.Bernoulli(0.4)) h.motif_nodes.push_back(i);
    }
    Eigen::VectorXd mask(8);
    for (int i = 0; i < 8; ++i) mask[i] = static_cast<double>(rng.UniformInt(0, 3)) / 3.0;
    const NodeSet rest = Complement(8, h.motif_nodes);
    if (h.motif_nodes.empty() || rest.empty()) continue;
    double wins = 0.0;
    for (int m : h.motif_nodes) {
      for (int b : rest) wins += mask[m] > mask[b] ? 1.0 : (mask[m] == mask[b] ? 0.5 : 0.0);
    }
    CHECK(std::abs(*MotifRankingAuc(h, mask) - wins / (h.motif_nodes.size() * rest.size())) <=
          1e-12);
  }
}

TEST_CASE("random masks score one half on average") {
  Rng rng(17);
  double total = 0.0;
  const int graphs = 2000;
  for (int trial = 0; trial < graphs; ++trial) {
    Graph g;
    g.node_count = 30;
    g.features = Eigen::MatrixXd::Zero(30, 1);
    for (int i = 0; i < 5; ++i) g.motif_nodes.push_back(i * 6);
    total += *MotifRankingAuc(g, testing::RandomMask(30, rng, 0.0, 1.0));
  }
  const double mean = total / graphs;
  CHECK(mean >= 0.48);
  CHECK(mean <= 0.52);
}

}  // namespace
}  // namespace ifx

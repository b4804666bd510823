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

#include "ifx/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "ifx/error.hpp"
#include "ifx/io.hpp"
#include "serialization.hpp"

namespace ifx {

using nlohmann::json;

namespace {

void RequireFile(const std::filesystem::path& path, const std::string& producer) {
  if (!std::filesystem::exists(path)) {
    Fail(ErrorKind::kIo, "missing input '" + path.string() + "' (run '" + producer + "' first)");
  }
}

std::string FormatNumber(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string FormatFixed(double value, int digits) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

ExplainerConfig ExplainerSection(const RunConfig& config) {
  ExplainerConfig ex = config.explainer;
  ex.seed = config.seed;
  return ex;
}

struct LoadedExplanations {
  std::vector<int> indices;
  std::vector<Explanation> explanations;
};

LoadedExplanations LoadExplanations(const RunConfig& config, const std::string& name,
                                    const Dataset& dataset) {
  const auto path = ExplanationPath(config, name);
  RequireFile(path, "explain");
  ExplanationSet set;
  try {
    set = ExplanationSetFromJson(ReadFile(path));
  } catch (const Error& e) {
    Fail(e.kind(), path.string() + ": " + e.what());
  }
  if (set.graph_indices != dataset.splits.test) {
    Fail(ErrorKind::kValidation,
         path.string() + ": graph indices do not match the dataset's test split");
  }
  return {std::move(set.graph_indices), std::move(set.explanations)};
}

json PairToJson(const PairScores& pair, const std::vector<std::string>& concepts,
                const std::vector<std::string>& class_names) {
  json per_concept = json::array();
  for (std::size_t c = 0; c < pair.concept_auc.size(); ++c) {
    json by_k = json::object();
    for (const auto& [k, d] : pair.concept_distances[c]) by_k[SparsityKey(k)] = d;
    per_concept.push_back({{"concept", concepts[c]}, {"D_c", pair.concept_auc[c]}, {"d_c_k", by_k}});
  }
  return {{"pair", {class_names.at(pair.class_x), class_names.at(pair.class_y)}},
          {"max", pair.max},
          {"ave", pair.ave},
          {"concepts", per_concept}};
}

json SideToJson(const SideScores& side, const std::vector<std::string>& concepts,
                const std::vector<std::string>& class_names) {
  json pairs = json::array();
  for (const PairScores& pair : side.pairs) pairs.push_back(PairToJson(pair, concepts, class_names));
  return {{"pairs", pairs},
          {"aggregated", {{"max", side.aggregated_max}, {"ave", side.aggregated_ave}}},
          {"risk_aggregated", {{"max", side.risk_max}, {"ave", side.risk_ave}}}};
}

}  // namespace

std::filesystem::path ExplanationPath(const RunConfig& config, const std::string& explainer) {
  return config.paths.explanations_dir / (explainer + ".json");
}

std::filesystem::path TrainLogPath(const RunConfig& config) {
  std::filesystem::path log = config.paths.model;
  log.replace_extension(".train.csv");
  return log;
}

CommandResult CmdGenerate(const RunConfig& config) {
  GeneratorConfig generator = config.generator;
  generator.seed = config.seed;
  const Dataset dataset = GenerateDataset(generator);
  SaveDataset(dataset, config.paths.dataset);
  CommandResult result;
  result.written.push_back(config.paths.dataset);
  result.message = "generated " + std::to_string(dataset.graphs.size()) + " graphs (" +
                   std::to_string(dataset.splits.train.size()) + " train, " +
                   std::to_string(dataset.splits.validation.size()) + " validation, " +
                   std::to_string(dataset.splits.test.size()) + " test)";
  return result;
}

CommandResult CmdTrain(const RunConfig& config) {
  RequireFile(config.paths.dataset, "generate");
  const Dataset dataset = LoadDataset(config.paths.dataset);
  TrainConfig train = config.train;
  train.seed = config.seed;
  const TrainResult trained = Train(dataset, train);
  SaveModel(trained.model, config.paths.model);

  std::ostringstream log;
  log << "epoch,train_loss,train_accuracy,validation_accuracy\n";
  for (const EpochStats& s : trained.history) {
    log << s.epoch << ',' << FormatNumber(s.train_loss) << ',' << FormatNumber(s.train_accuracy)
        << ',' << FormatNumber(s.validation_accuracy) << '\n';
  }
  WriteFileAtomic(TrainLogPath(config), log.str());

  CommandResult result;
  result.written = {config.paths.model, TrainLogPath(config)};
  const double test = Accuracy(trained.model, dataset, dataset.splits.test);
  result.message = "best epoch " + std::to_string(trained.best_epoch) + ", validation accuracy " +
                   FormatFixed(trained.model.val_accuracy, 4) + ", test accuracy " +
                   FormatFixed(test, 4);
  return result;
}

CommandResult CmdExplain(const RunConfig& config) {
  RequireFile(config.paths.dataset, "generate");
  RequireFile(config.paths.model, "train");
  const Dataset dataset = LoadDataset(config.paths.dataset);
  const GnnModel model = LoadModel(config.paths.model);
  const ExplainerConfig ex = ExplainerSection(config);

  CommandResult result;
  for (const std::string& name : config.explainers) {
    ExplanationSet set;
    set.explainer_name = name;
    set.graph_indices = dataset.splits.test;
    set.explanations =
        ExplainBatch(name, model, dataset, set.graph_indices, ex, config.worker_count);
    const auto path = ExplanationPath(config, name);
    WriteFileAtomic(path, ExplanationSetToJson(set));
    result.written.push_back(path);
  }
  result.message = "explained " + std::to_string(dataset.splits.test.size()) + " test graphs with " +
                   std::to_string(config.explainers.size()) + " explainer(s)";
  return result;
}

CommandResult CmdEvaluate(const RunConfig& config) {
  RequireFile(config.paths.dataset, "generate");
  RequireFile(config.paths.model, "train");
  const Dataset dataset = LoadDataset(config.paths.dataset);
  const GnnModel model = LoadModel(config.paths.model);

  SeparabilityOptions options;
  options.bins = config.metrics.bins;
  options.sparsity_set = config.metrics.sparsity_set;
  options.risk = config.metrics.risk;
  options.weighting = config.metrics.weighting;

  json fidelity = json::object();
  json separability = json::object();
  json motif = json::object();
  for (const std::string& name : config.explainers) {
    const LoadedExplanations loaded = LoadExplanations(config, name, dataset);

    json points = json::array();
    for (const FidelityPoint& p : FidelityCurve(model, dataset, loaded.indices,
                                                loaded.explanations, options.sparsity_set)) {
      points.push_back({{"k", p.sparsity},
                        {"fidelity_plus", p.fidelity_plus},
                        {"fidelity_minus", p.fidelity_minus},
                        {"retained", p.retained}});
    }
    fidelity[name] = points;

    const SeparabilityReport report =
        ComputeSeparability(model, dataset, loaded.indices, loaded.explanations, options);
    separability[name] = {
        {"S", SideToJson(report.predictive, report.concept_names, dataset.class_names)},
        {"C", SideToJson(report.counterfactual, report.concept_names, dataset.class_names)},
        {"retained", report.retained}};

    const MotifRecovery recovery = ComputeMotifRecovery(dataset, loaded.indices, loaded.explanations);
    json per_graph = json::array();
    for (std::size_t p = 0; p < loaded.indices.size(); ++p) {
      per_graph.push_back({{"graph_index", loaded.indices[p]},
                           {"auc", recovery.per_graph[p] ? json(*recovery.per_graph[p]) : json()}});
    }
    motif[name] = {{"mean", recovery.mean}, {"scored", recovery.scored}, {"per_graph", per_graph}};
  }

  const json sparsity = config.metrics.sparsity_set;
  const auto dir = config.paths.reports_dir;
  WriteFileAtomic(dir / kFidelityReport,
                  json{{"sparsity_set", sparsity}, {"explainers", fidelity}}.dump(1) + "\n");
  WriteFileAtomic(dir / kSeparabilityReport,
                  json{{"sparsity_set", sparsity},
                       {"bins", options.bins},
                       {"class_names", dataset.class_names},
                       {"explainers", separability}}
                          .dump(1) +
                      "\n");
  WriteFileAtomic(dir / kMotifReport, json{{"explainers", motif}}.dump(1) + "\n");

  CommandResult result;
  result.written = {dir / kFidelityReport, dir / kSeparabilityReport, dir / kMotifReport};
  result.message = "evaluated " + std::to_string(config.explainers.size()) + " explainer(s)";
  return result;
}

CommandResult CmdReport(const RunConfig& config) {
  const auto dir = config.paths.reports_dir;
  for (const char* name : {kFidelityReport, kSeparabilityReport, kMotifReport}) {
    RequireFile(dir / name, "evaluate");
  }
  const json fidelity = detail::ParseJson(ReadFile(dir / kFidelityReport), kFidelityReport);
  const json separability =
      detail::ParseJson(ReadFile(dir / kSeparabilityReport), kSeparabilityReport);
  const json motif = detail::ParseJson(ReadFile(dir / kMotifReport), kMotifReport);

  std::ostringstream fidelity_csv;
  std::ostringstream separability_csv;
  std::ostringstream table;
  fidelity_csv << "explainer,k,fidelity_plus,fidelity_minus\n";
  separability_csv << "explainer,side,pair,concept,D_c\n";

  try {
    const json& sep_explainers = separability.at("explainers");
    for (const auto& [name, points] : fidelity.at("explainers").items()) {
      for (const json& p : points) {
        fidelity_csv << name << ',' << FormatNumber(p.at("k").get<double>()) << ','
                     << FormatNumber(p.at("fidelity_plus").get<double>()) << ','
                     << FormatNumber(p.at("fidelity_minus").get<double>()) << '\n';
      }
    }
    for (const auto& [name, sides] : sep_explainers.items()) {
      for (const char* side : {"S", "C"}) {
        const json& s = sides.at(side);
        for (const json& pair : s.at("pairs")) {
          const std::string label = pair.at("pair")[0].get<std::string>() + "-" +
                                    pair.at("pair")[1].get<std::string>();
          for (const json& c : pair.at("concepts")) {
            separability_csv << name << ',' << side << ',' << label << ','
                             << c.at("concept").get<std::string>() << ','
                             << FormatNumber(c.at("D_c").get<double>()) << '\n';
          }
          separability_csv << name << ',' << side << ',' << label << ",max,"
                           << FormatNumber(pair.at("max").get<double>()) << '\n';
          separability_csv << name << ',' << side << ',' << label << ",ave,"
                           << FormatNumber(pair.at("ave").get<double>()) << '\n';
        }
        for (const char* summary : {"aggregated", "risk_aggregated"}) {
          for (const char* stat : {"max", "ave"}) {
            separability_csv << name << ',' << side << ',' << summary << ',' << stat << ','
                             << FormatNumber(s.at(summary).at(stat).get<double>()) << '\n';
          }
        }
      }
    }

    // Summary table: explainers x separability columns, then fidelity and
    // motif recovery.
    std::vector<std::string> pairs;
    const json& first = sep_explainers.begin().value();
    for (const json& pair : first.at("S").at("pairs")) {
      pairs.push_back(pair.at("pair")[0].get<std::string>() + "-" +
                      pair.at("pair")[1].get<std::string>());
    }
    constexpr int kName = 10;
    int cell_width = 10;
    auto header = [&](const std::string& title, const std::vector<std::string>& columns) {
      cell_width = 10;
      for (const auto& c : columns) cell_width = std::max(cell_width, static_cast<int>(c.size()) + 2);
      table << title << '\n' << std::left << std::setw(kName) << "explainer";
      for (const auto& c : columns) table << std::right << std::setw(cell_width) << c;
      table << '\n';
    };
    auto cell = [&](double v) { table << std::right << std::setw(cell_width) << FormatFixed(v, 4); };

    for (const char* stat : {"max", "ave"}) {
      std::vector<std::string> columns;
      for (const char* side : {"C", "S"}) {
        for (const auto& p : pairs) columns.push_back(std::string(side) + ":" + p);
      }
      for (const char* side : {"C", "S"}) columns.push_back(std::string(side) + "_" + stat);
      for (const char* side : {"C", "S"}) columns.push_back(std::string(side) + "_" + stat + ",R");
      header(std::string("Separability (") + stat + ")", columns);
      for (const auto& [name, sides] : sep_explainers.items()) {
        table << std::left << std::setw(kName) << name;
        for (const char* side : {"C", "S"}) {
          for (const json& pair : sides.at(side).at("pairs")) cell(pair.at(stat).get<double>());
        }
        for (const char* side : {"C", "S"}) {
          cell(sides.at(side).at("aggregated").at(stat).get<double>());
        }
        for (const char* side : {"C", "S"}) {
          cell(sides.at(side).at("risk_aggregated").at(stat).get<double>());
        }
        table << '\n';
      }
      table << '\n';
    }

    std::vector<std::string> ks;
    for (const json& k : fidelity.at("sparsity_set")) ks.push_back("k=" + SparsityKey(k.get<double>()));
    for (const char* which : {"fidelity_plus", "fidelity_minus"}) {
      header(std::string(which == std::string("fidelity_plus") ? "Fidelity+" : "Fidelity-"), ks);
      for (const auto& [name, points] : fidelity.at("explainers").items()) {
        table << std::left << std::setw(kName) << name;
        for (const json& p : points) cell(p.at(which).get<double>());
        table << '\n';
      }
      table << '\n';
    }

    header("Motif recovery (ROC AUC)", {"mean", "scored"});
    for (const auto& [name, m] : motif.at("explainers").items()) {
      table << std::left << std::setw(kName) << name;
      cell(m.at("mean").get<double>());
      table << std::right << std::setw(cell_width) << m.at("scored").get<int>() << '\n';
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, std::string("report inputs: ") + e.what());
  }

  WriteFileAtomic(dir / kFidelityCsv, fidelity_csv.str());
  WriteFileAtomic(dir / kSeparabilityCsv, separability_csv.str());
  WriteFileAtomic(dir / kSummaryTable, table.str());
  CommandResult result;
  result.written = {dir / kSummaryTable, dir / kFidelityCsv, dir / kSeparabilityCsv};
  result.message = table.str();
  return result;
}

}  // namespace ifx

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

#include "ifx/run_config.hpp"

#include <cmath>
#include <initializer_list>
#include <set>
#include <sstream>

#include "ifx/error.hpp"
#include "ifx/io.hpp"
#include "serialization.hpp"

namespace ifx {

using nlohmann::json;

void RunConfig::SyncSeeds() {
  generator.seed = seed;
  train.seed = seed;
  explainer.seed = seed;
}

namespace {

[[noreturn]] void BadKey(const std::string& key, const std::string& what) {
  Fail(ErrorKind::kValidation, "config key '" + key + "': " + what);
}

void CheckKeys(const json& object, const std::string& prefix,
               std::initializer_list<const char*> allowed) {
  if (!object.is_object()) BadKey(prefix, "must be an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& item : object.items()) {
    if (!known.contains(item.key())) {
      BadKey(prefix.empty() ? item.key() : prefix + "." + item.key(), "unknown key");
    }
  }
}

// Reads object[key] into `out` when present, naming the key on a type error.
template <typename T>
void Read(const json& object, const char* key, const std::string& prefix, T& out) {
  if (!object.contains(key)) return;
  try {
    out = object.at(key).get<T>();
  } catch (const json::exception&) {
    BadKey(prefix + key, "has the wrong type");
  }
}

MotifSpec MotifFromJson(const json& entry, const std::string& key) {
  if (entry.contains("type")) {
    CheckKeys(entry, key, {"type", "size"});
    std::string type;
    int size = 0;
    Read(entry, "type", key + ".", type);
    Read(entry, "size", key + ".", size);
    if (type == "cycle") {
      if (size < 3) BadKey(key + ".size", "a cycle needs at least 3 nodes");
      return CycleMotif(size);
    }
    if (type == "clique") {
      if (size < 2) BadKey(key + ".size", "a clique needs at least 2 nodes");
      return CliqueMotif(size);
    }
    if (type == "house") return HouseMotif();
    BadKey(key + ".type", "expected cycle, clique or house");
  }
  CheckKeys(entry, key, {"name", "nodes", "edges"});
  MotifSpec motif;
  Read(entry, "name", key + ".", motif.name);
  Read(entry, "nodes", key + ".", motif.node_count);
  std::vector<std::vector<int>> edges;
  Read(entry, "edges", key + ".", edges);
  for (const auto& e : edges) {
    if (e.size() != 2) BadKey(key + ".edges", "each edge must be a pair");
    motif.edges.emplace_back(e[0], e[1]);
  }
  try {
    motif.edges = CanonicalEdges(motif.node_count, motif.edges);
  } catch (const Error& e) {
    BadKey(key + ".edges", e.what());
  }
  return motif;
}

AttributeDistribution DistributionFromJson(const json& entry, const std::string& key) {
  CheckKeys(entry, key, {"mean", "stddev"});
  AttributeDistribution dist;
  Read(entry, "mean", key + ".", dist.mean);
  Read(entry, "stddev", key + ".", dist.stddev);
  return dist;
}

json DistributionToJson(const AttributeDistribution& dist) {
  return {{"mean", dist.mean}, {"stddev", dist.stddev}};
}

void ReadGenerator(const json& section, GeneratorConfig& g) {
  const std::string p = "generator.";
  CheckKeys(section, "generator",
            {"class_count", "graphs_per_class", "base_size_range", "base_edge_prob",
             "motif_catalog", "attribute_model", "noise_std", "schema", "class_names", "split"});
  Read(section, "graphs_per_class", p, g.graphs_per_class);
  if (section.contains("base_size_range")) {
    std::vector<int> range;
    Read(section, "base_size_range", p, range);
    if (range.size() != 2) BadKey(p + "base_size_range", "expected [min, max]");
    g.base_min_nodes = range[0];
    g.base_max_nodes = range[1];
  }
  Read(section, "base_edge_prob", p, g.base_edge_prob);
  Read(section, "noise_std", p, g.noise_std);
  if (section.contains("motif_catalog")) {
    const json& catalog = section.at("motif_catalog");
    if (!catalog.is_array()) BadKey(p + "motif_catalog", "must be an array");
    g.motif_catalog.clear();
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      g.motif_catalog.push_back(
          MotifFromJson(catalog[i], p + "motif_catalog[" + std::to_string(i) + "]"));
    }
    g.class_count = static_cast<int>(g.motif_catalog.size());
  }
  if (section.contains("class_count")) {
    int declared = 0;
    Read(section, "class_count", p, declared);
    if (declared != static_cast<int>(g.motif_catalog.size())) {
      BadKey(p + "class_count", "must equal the number of motifs (" +
                                    std::to_string(g.motif_catalog.size()) + ")");
    }
  }
  if (section.contains("attribute_model")) {
    const json& model = section.at("attribute_model");
    CheckKeys(model, p + "attribute_model", {"motif", "background"});
    if (model.contains("motif")) {
      g.motif_attributes.clear();
      const json& motif = model.at("motif");
      if (!motif.is_array()) BadKey(p + "attribute_model.motif", "must be an array");
      for (std::size_t i = 0; i < motif.size(); ++i) {
        g.motif_attributes.push_back(DistributionFromJson(
            motif[i], p + "attribute_model.motif[" + std::to_string(i) + "]"));
      }
    }
    if (model.contains("background")) {
      g.background_attributes =
          DistributionFromJson(model.at("background"), p + "attribute_model.background");
    }
  }
  if (section.contains("schema")) {
    const json& schema = section.at("schema");
    CheckKeys(schema, p + "schema", {"attribute_names", "concepts"});
    Read(schema, "attribute_names", p + "schema.", g.schema.attribute_names);
    if (schema.contains("concepts")) {
      g.schema.concepts.clear();
      for (const json& c : schema.at("concepts")) {
        CheckKeys(c, p + "schema.concepts", {"name", "attributes"});
        Concept group;
        Read(c, "name", p + "schema.concepts.", group.name);
        Read(c, "attributes", p + "schema.concepts.", group.attributes);
        g.schema.concepts.push_back(std::move(group));
      }
    }
  }
  Read(section, "class_names", p, g.class_names);
  if (section.contains("split")) {
    const json& split = section.at("split");
    CheckKeys(split, p + "split", {"train", "validation"});
    Read(split, "train", p + "split.", g.train_fraction);
    Read(split, "validation", p + "split.", g.validation_fraction);
  }
}

json GeneratorToJson(const GeneratorConfig& g) {
  json catalog = json::array();
  for (const MotifSpec& m : g.motif_catalog) {
    json edges = json::array();
    for (const auto& [u, v] : m.edges) edges.push_back({u, v});
    catalog.push_back({{"name", m.name}, {"nodes", m.node_count}, {"edges", edges}});
  }
  json motif = json::array();
  for (const auto& d : g.motif_attributes) motif.push_back(DistributionToJson(d));
  json concepts = json::array();
  for (const Concept& c : g.schema.concepts) {
    concepts.push_back({{"name", c.name}, {"attributes", c.attributes}});
  }
  return {{"class_count", g.class_count},
          {"graphs_per_class", g.graphs_per_class},
          {"base_size_range", {g.base_min_nodes, g.base_max_nodes}},
          {"base_edge_prob", g.base_edge_prob},
          {"motif_catalog", catalog},
          {"attribute_model",
           {{"motif", motif}, {"background", DistributionToJson(g.background_attributes)}}},
          {"noise_std", g.noise_std},
          {"schema", {{"attribute_names", g.schema.attribute_names}, {"concepts", concepts}}},
          {"class_names", g.class_names},
          {"split", {{"train", g.train_fraction}, {"validation", g.validation_fraction}}}};
}

}  // namespace

RunConfig RunConfigFromJson(const std::string& text) {
  const json document = detail::ParseJson(text, "config");
  RunConfig config;
  CheckKeys(document, "",
            {"seed", "worker_count", "paths", "generator", "train", "explainer", "metrics"});
  Read(document, "seed", "", config.seed);
  Read(document, "worker_count", "", config.worker_count);

  if (document.contains("paths")) {
    const json& paths = document.at("paths");
    CheckKeys(paths, "paths", {"dataset", "model", "explanations_dir", "reports_dir"});
    std::string value;
    auto read_path = [&](const char* key, std::filesystem::path& out) {
      if (!paths.contains(key)) return;
      Read(paths, key, "paths.", value);
      if (value.empty()) BadKey(std::string("paths.") + key, "must not be empty");
      out = value;
    };
    read_path("dataset", config.paths.dataset);
    read_path("model", config.paths.model);
    read_path("explanations_dir", config.paths.explanations_dir);
    read_path("reports_dir", config.paths.reports_dir);
  }

  if (document.contains("generator")) ReadGenerator(document.at("generator"), config.generator);

  if (document.contains("train")) {
    const json& train = document.at("train");
    CheckKeys(train, "train",
              {"epochs", "learning_rate", "weight_decay", "hidden_dims", "batch_size"});
    Read(train, "epochs", "train.", config.train.epochs);
    Read(train, "learning_rate", "train.", config.train.learning_rate);
    Read(train, "weight_decay", "train.", config.train.weight_decay);
    Read(train, "hidden_dims", "train.", config.train.hidden_dims);
    Read(train, "batch_size", "train.", config.train.batch_size);
  }

  if (document.contains("explainer")) {
    const json& ex = document.at("explainer");
    CheckKeys(ex, "explainer",
              {"beta", "gamma", "steps", "step_size", "init_logit_std", "sparsity_set",
               "explainers"});
    Read(ex, "beta", "explainer.", config.explainer.beta);
    Read(ex, "gamma", "explainer.", config.explainer.gamma);
    Read(ex, "steps", "explainer.", config.explainer.steps);
    Read(ex, "step_size", "explainer.", config.explainer.step_size);
    Read(ex, "init_logit_std", "explainer.", config.explainer.init_logit_std);
    Read(ex, "sparsity_set", "explainer.", config.explainer.sparsity_set);
    Read(ex, "explainers", "explainer.", config.explainers);
  }

  if (document.contains("metrics")) {
    const json& metrics = document.at("metrics");
    CheckKeys(metrics, "metrics", {"bins", "risk", "sparsity_set", "complement_weighting"});
    Read(metrics, "bins", "metrics.", config.metrics.bins);
    Read(metrics, "sparsity_set", "metrics.", config.metrics.sparsity_set);
    if (metrics.contains("risk")) {
      try {
        config.metrics.risk = detail::MatrixFromJson(metrics.at("risk"), "metrics.risk");
      } catch (const Error& e) {
        BadKey("metrics.risk", e.what());
      } catch (const json::exception&) {
        BadKey("metrics.risk", "must be a matrix of numbers");
      }
    }
    if (metrics.contains("complement_weighting")) {
      std::string weighting;
      Read(metrics, "complement_weighting", "metrics.", weighting);
      if (weighting == "one_minus_mask") {
        config.metrics.weighting = ComplementWeighting::kOneMinusMask;
      } else if (weighting == "mask") {
        config.metrics.weighting = ComplementWeighting::kMask;
      } else {
        BadKey("metrics.complement_weighting", "expected 'one_minus_mask' or 'mask'");
      }
    }
  }

  config.SyncSeeds();
  ValidateRunConfig(config);
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  return RunConfigFromJson(ReadFile(path));
}

std::string RunConfigToJson(const RunConfig& config) {
  json train = detail::TrainConfigToJson(config.train);
  train.erase("seed");
  json document = {
      {"seed", config.seed},
      {"worker_count", config.worker_count},
      {"paths",
       {{"dataset", config.paths.dataset.string()},
        {"model", config.paths.model.string()},
        {"explanations_dir", config.paths.explanations_dir.string()},
        {"reports_dir", config.paths.reports_dir.string()}}},
      {"generator", GeneratorToJson(config.generator)},
      {"train", train},
      {"explainer",
       {{"beta", config.explainer.beta},
        {"gamma", config.explainer.gamma},
        {"steps", config.explainer.steps},
        {"step_size", config.explainer.step_size},
        {"init_logit_std", config.explainer.init_logit_std},
        {"sparsity_set", config.explainer.sparsity_set},
        {"explainers", config.explainers}}},
      {"metrics",
       {{"bins", config.metrics.bins},
        {"sparsity_set", config.metrics.sparsity_set},
        {"complement_weighting", config.metrics.weighting == ComplementWeighting::kMask
                                     ? "mask"
                                     : "one_minus_mask"}}},
  };
  if (config.metrics.risk.size() > 0) {
    document["metrics"]["risk"] = detail::MatrixToJson(config.metrics.risk);
  }
  return document.dump(2) + "\n";
}

void ValidateRunConfig(const RunConfig& config) {
  auto rethrow_as = [](const std::string& key, auto&& check) {
    try {
      check();
    } catch (const Error& e) {
      BadKey(key, e.what());
    }
  };
  if (config.worker_count < 1) BadKey("worker_count", "must be at least 1");
  rethrow_as("generator", [&] { ValidateGeneratorConfig(config.generator); });
  if (config.train.epochs < 0) BadKey("train.epochs", "must be non-negative");
  if (!(config.train.learning_rate > 0.0)) BadKey("train.learning_rate", "must be positive");
  if (!(config.train.weight_decay >= 0.0)) BadKey("train.weight_decay", "must be non-negative");
  if (config.train.batch_size < 1) BadKey("train.batch_size", "must be positive");
  for (int h : config.train.hidden_dims) {
    if (h < 1) BadKey("train.hidden_dims", "entries must be positive");
  }
  if (config.explainer.beta < 0.0 || !std::isfinite(config.explainer.beta)) {
    BadKey("explainer.beta", "must be non-negative");
  }
  if (config.explainer.gamma < 0.0 || !std::isfinite(config.explainer.gamma)) {
    BadKey("explainer.gamma", "must be non-negative");
  }
  if (config.explainer.steps < 0) BadKey("explainer.steps", "must be non-negative");
  if (!(config.explainer.step_size > 0.0)) BadKey("explainer.step_size", "must be positive");
  if (!(config.explainer.init_logit_std >= 0.0)) {
    BadKey("explainer.init_logit_std", "must be non-negative");
  }
  rethrow_as("explainer.sparsity_set", [&] { ValidateSparsitySet(config.explainer.sparsity_set); });
  if (config.explainers.empty()) BadKey("explainer.explainers", "must name at least one explainer");
  std::set<std::string> seen;
  for (const std::string& name : config.explainers) {
    if (!IsExplainerName(name)) BadKey("explainer.explainers", "unknown explainer '" + name + "'");
    if (!seen.insert(name).second) BadKey("explainer.explainers", "duplicate explainer '" + name + "'");
  }
  if (config.metrics.bins < 1) BadKey("metrics.bins", "must be positive");
  rethrow_as("metrics.sparsity_set", [&] { ValidateSparsitySet(config.metrics.sparsity_set); });
  if (config.metrics.risk.size() > 0) {
    rethrow_as("metrics.risk",
               [&] { ValidateRiskMatrix(config.metrics.risk, config.generator.class_count); });
  }
  const std::vector<std::pair<const char*, std::filesystem::path>> paths = {
      {"paths.dataset", config.paths.dataset},
      {"paths.model", config.paths.model},
      {"paths.explanations_dir", config.paths.explanations_dir},
      {"paths.reports_dir", config.paths.reports_dir}};
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      if (paths[i].second.lexically_normal() == paths[j].second.lexically_normal()) {
        BadKey(paths[j].first, std::string("must differ from ") + paths[i].first);
      }
    }
  }
}

namespace {

double ParseNumber(std::string_view token, std::string_view spec) {
  const std::string text(token);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    Fail(ErrorKind::kInvalidArgument, "bad number '" + text + "' in '" + std::string(spec) + "'");
  }
  return value;
}

double RoundSparsity(double value) { return std::round(value * 1e10) / 1e10; }

}  // namespace

std::vector<double> ParseSparsitySpec(std::string_view spec) {
  std::vector<double> values;
  if (spec.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = spec.find(':', start)) != std::string_view::npos; start = pos + 1) {
      parts.push_back(spec.substr(start, pos - start));
    }
    parts.push_back(spec.substr(start));
    if (parts.size() != 3) {
      Fail(ErrorKind::kInvalidArgument, "sparsity range must be lo:hi:step, got '" +
                                            std::string(spec) + "'");
    }
    const double lo = ParseNumber(parts[0], spec);
    const double hi = ParseNumber(parts[1], spec);
    const double step = ParseNumber(parts[2], spec);
    if (!(step > 0.0) || hi < lo) {
      Fail(ErrorKind::kInvalidArgument, "sparsity range needs step > 0 and lo <= hi");
    }
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) values.push_back(RoundSparsity(lo + step * i));
  } else {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const std::size_t pos = std::min(spec.find(',', start), spec.size());
      values.push_back(RoundSparsity(ParseNumber(spec.substr(start, pos - start), spec)));
      start = pos + 1;
    }
  }
  try {
    ValidateSparsitySet(values);
  } catch (const Error& e) {
    Fail(ErrorKind::kInvalidArgument, e.what());
  }
  return values;
}

std::vector<std::string> ParseExplainerList(std::string_view spec) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t pos = std::min(spec.find(',', start), spec.size());
    std::string name(spec.substr(start, pos - start));
    if (!IsExplainerName(name)) {
      Fail(ErrorKind::kInvalidArgument,
           "unknown explainer '" + name + "' (expected ifx, mi, cf, gradient or random)");
    }
    names.push_back(std::move(name));
    start = pos + 1;
  }
  return names;
}

}  // namespace ifx

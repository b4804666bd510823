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

#include "serialization.hpp"

#include "ifx/error.hpp"
#include "ifx/io.hpp"

namespace ifx {

namespace detail {

using nlohmann::json;

json MatrixToJson(const Eigen::MatrixXd& matrix) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) row.push_back(matrix(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd MatrixFromJson(const json& rows, const std::string& what) {
  if (!rows.is_array()) Fail(ErrorKind::kParse, what + " must be an array of rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd matrix(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<Eigen::Index>(rows[i].size()) != c) {
      Fail(ErrorKind::kParse, what + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index j = 0; j < c; ++j) matrix(i, j) = rows[i][j].get<double>();
  }
  return matrix;
}

json VectorToJson(const Eigen::VectorXd& vector) {
  return json(std::vector<double>(vector.data(), vector.data() + vector.size()));
}

Eigen::VectorXd VectorFromJson(const json& values) {
  const auto v = values.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json TrainConfigToJson(const TrainConfig& config) {
  return json{{"epochs", config.epochs},         {"learning_rate", config.learning_rate},
              {"weight_decay", config.weight_decay}, {"seed", config.seed},
              {"hidden_dims", config.hidden_dims}, {"batch_size", config.batch_size}};
}

void UpdateTrainConfig(const json& object, TrainConfig& config) {
  config.epochs = object.value("epochs", config.epochs);
  config.learning_rate = object.value("learning_rate", config.learning_rate);
  config.weight_decay = object.value("weight_decay", config.weight_decay);
  config.seed = object.value("seed", config.seed);
  config.hidden_dims = object.value("hidden_dims", config.hidden_dims);
  config.batch_size = object.value("batch_size", config.batch_size);
}

json ParseJson(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorKind::kParse, what + " is not valid JSON: " + e.what());
  }
}

}  // namespace detail

using nlohmann::json;

std::string ModelToJson(const GnnModel& model) {
  json weights = json::array();
  json biases = json::array();
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    weights.push_back(detail::MatrixToJson(model.weights[l]));
    biases.push_back(detail::VectorToJson(model.biases[l]));
  }
  json document = {{"feature_dim", model.feature_dim},
                   {"hidden_dims", model.hidden_dims},
                   {"class_count", model.class_count},
                   {"weights", std::move(weights)},
                   {"biases", std::move(biases)},
                   {"train_config", detail::TrainConfigToJson(model.train_config)},
                   {"val_accuracy", model.val_accuracy}};
  return document.dump() + "\n";
}

GnnModel ModelFromJson(const std::string& text) {
  const json document = detail::ParseJson(text, "model");
  GnnModel model;
  try {
    model.feature_dim = document.at("feature_dim").get<int>();
    model.hidden_dims = document.at("hidden_dims").get<std::vector<int>>();
    model.class_count = document.at("class_count").get<int>();
    const json& weights = document.at("weights");
    const json& biases = document.at("biases");
    for (std::size_t l = 0; l < weights.size(); ++l) {
      model.weights.push_back(
          detail::MatrixFromJson(weights[l], "model weight " + std::to_string(l)));
    }
    for (const json& bias : biases) model.biases.push_back(detail::VectorFromJson(bias));
    if (document.contains("train_config")) {
      detail::UpdateTrainConfig(document.at("train_config"), model.train_config);
    }
    model.val_accuracy = document.value("val_accuracy", 0.0);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kParse, std::string("model: ") + e.what());
  }
  // A 0-row JSON matrix loses its column count.
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    if (model.weights[l].size() == 0 && l < model.biases.size()) {
      model.weights[l].resize(0, model.biases[l].size());
    }
  }
  ValidateModel(model);
  return model;
}

void SaveModel(const GnnModel& model, const std::filesystem::path& path) {
  WriteFileAtomic(path, ModelToJson(model));
}

GnnModel LoadModel(const std::filesystem::path& path) { return ModelFromJson(ReadFile(path)); }

}  // namespace ifx

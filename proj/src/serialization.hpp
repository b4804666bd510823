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

#ifndef IFX_SRC_SERIALIZATION_HPP_
#define IFX_SRC_SERIALIZATION_HPP_

// JSON helpers shared by the file formats and the run configuration.

#include <string>

#include <Eigen/Dense>

#include "json.hpp"

#include "ifx/gnn.hpp"

namespace ifx::detail {

nlohmann::json MatrixToJson(const Eigen::MatrixXd& matrix);
Eigen::MatrixXd MatrixFromJson(const nlohmann::json& rows, const std::string& what);
nlohmann::json VectorToJson(const Eigen::VectorXd& vector);
Eigen::VectorXd VectorFromJson(const nlohmann::json& values);

nlohmann::json TrainConfigToJson(const TrainConfig& config);
// Keys missing from `object` keep the values already in `config`.
void UpdateTrainConfig(const nlohmann::json& object, TrainConfig& config);

nlohmann::json ParseJson(const std::string& text, const std::string& what);

}  // namespace ifx::detail

#endif  // IFX_SRC_SERIALIZATION_HPP_

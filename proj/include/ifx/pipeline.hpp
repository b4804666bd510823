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

#ifndef IFX_PIPELINE_HPP_
#define IFX_PIPELINE_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "ifx/run_config.hpp"

namespace ifx {

// File names inside the explanations and reports directories.
std::filesystem::path ExplanationPath(const RunConfig& config, const std::string& explainer);
std::filesystem::path TrainLogPath(const RunConfig& config);

inline constexpr const char* kFidelityReport = "fidelity.json";
inline constexpr const char* kSeparabilityReport = "separability.json";
inline constexpr const char* kMotifReport = "motif_recovery.json";
inline constexpr const char* kSummaryTable = "summary.txt";
inline constexpr const char* kFidelityCsv = "fidelity.csv";
inline constexpr const char* kSeparabilityCsv = "separability.csv";

struct CommandResult {
  std::vector<std::filesystem::path> written;
  std::string message;
};

// Each command reads its upstream artifacts, fails with ErrorKind::kIo naming
// any missing path, and writes its outputs atomically.
CommandResult CmdGenerate(const RunConfig& config);
CommandResult CmdTrain(const RunConfig& config);
CommandResult CmdExplain(const RunConfig& config);
CommandResult CmdEvaluate(const RunConfig& config);
CommandResult CmdReport(const RunConfig& config);

}  // namespace ifx

#endif  // IFX_PIPELINE_HPP_

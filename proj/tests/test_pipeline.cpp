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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "ifx/error.hpp"
#include "ifx/io.hpp"
#include "ifx/pipeline.hpp"

namespace ifx {
namespace {

namespace fs = std::filesystem;

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ifx_test_pipeline" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunConfig SmallConfig(const fs::path& dir, int workers) {
  RunConfig config;
  config.generator.graphs_per_class = 20;
  config.train.epochs = 20;
  config.explainer.steps = 30;
  config.explainer.sparsity_set = {0.05, 0.1, 0.2};
  config.metrics.sparsity_set = {0.05, 0.1, 0.2};
  config.worker_count = workers;
  config.paths.dataset = dir / "dataset.json";
  config.paths.model = dir / "model.json";
  config.paths.explanations_dir = dir / "explanations";
  config.paths.reports_dir = dir / "reports";
  config.SyncSeeds();
  return config;
}

void RunAll(const RunConfig& config) {
  CmdGenerate(config);
  CmdTrain(config);
  CmdExplain(config);
  CmdEvaluate(config);
  CmdReport(config);
}

std::vector<std::string> Lines(const fs::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// Explanation and report files of a finished run, relative to the run root.
std::vector<fs::path> Artifacts(const RunConfig& config) {
  std::vector<fs::path> files;
  for (const std::string& name : config.explainers) files.push_back(ExplanationPath(config, name));
  for (const char* report : {kFidelityReport, kSeparabilityReport, kMotifReport, kSummaryTable,
                             kFidelityCsv, kSeparabilityCsv}) {
    files.push_back(config.paths.reports_dir / report);
  }
  return files;
}

TEST_CASE("pipeline writes every artifact and is independent of the worker count") {
  const RunConfig serial = SmallConfig(FreshDir("serial"), 1);
  const RunConfig parallel = SmallConfig(FreshDir("parallel"), 8);
  RunAll(serial);
  RunAll(parallel);
  const auto a = Artifacts(serial);
  const auto b = Artifacts(parallel);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(fs::exists(a[i]));
    CHECK_MESSAGE(ReadFile(a[i]) == ReadFile(b[i]), a[i].filename().string());
  }
  CHECK(fs::exists(TrainLogPath(serial)));

  // One row per (explainer, k) plus the header.
  CHECK(Lines(serial.paths.reports_dir / kFidelityCsv).size() == 1 + 5 * 3);
  CHECK(Lines(serial.paths.reports_dir / kFidelityCsv)[0] ==
        "explainer,k,fidelity_plus,fidelity_minus");
  CHECK(Lines(TrainLogPath(serial)).size() == 1 + 20);

  // A rerun in place reproduces the same bytes.
  std::vector<std::string> before;
  for (const auto& path : a) before.push_back(ReadFile(path));
  RunAll(serial);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(ReadFile(a[i]) == before[i]);
}

TEST_CASE("commands report a missing upstream artifact by path") {
  const RunConfig config = SmallConfig(FreshDir("missing"), 1);
  auto message_of = [](auto&& command) -> std::string {
    try {
      command();
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kIo);
      return e.what();
    }
    FAIL("expected an error");
    return {};
  };
  const std::string train = message_of([&] { CmdTrain(config); });
  CHECK(train.find(config.paths.dataset.string()) != std::string::npos);
  CHECK(train.find("generate") != std::string::npos);
  CmdGenerate(config);
  const std::string explain = message_of([&] { CmdExplain(config); });
  CHECK(explain.find(config.paths.model.string()) != std::string::npos);
  const std::string report = message_of([&] { CmdReport(config); });
  CHECK(report.find("evaluate") != std::string::npos);
}

TEST_CASE("evaluate rejects explanations of another split") {
  RunConfig config = SmallConfig(FreshDir("mismatch"), 1);
  config.explainers = {"random"};
  CmdGenerate(config);
  CmdTrain(config);
  CmdExplain(config);
  // Regenerate a larger dataset: the explanations no longer fit.
  RunConfig other = config;
  other.generator.graphs_per_class = 30;
  CmdGenerate(other);
  CHECK_THROWS_AS(CmdEvaluate(config), Error);
}

}  // namespace
}  // namespace ifx

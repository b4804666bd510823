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


// Exercises the C interface through the shared library only.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "ifx/ifx.h"

namespace {

namespace fs = std::filesystem;

fs::path WriteSmallConfig(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ifx_test_c_api" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream out(dir / "config.json");
  out << R"({
  "paths": {"dataset": ")" << (dir / "dataset.json").string() << R"(",
            "model": ")" << (dir / "model.json").string() << R"(",
            "explanations_dir": ")" << (dir / "explanations").string() << R"(",
            "reports_dir": ")" << (dir / "reports").string() << R"("},
  "generator": {"graphs_per_class": 20},
  "train": {"epochs": 15},
  "explainer": {"steps": 20, "sparsity_set": [0.1, 0.2]},
  "metrics": {"sparsity_set": [0.1, 0.2]}
})";
  return dir / "config.json";
}

TEST_CASE("status names and version") {
  CHECK(std::string(ifx_status_name(IFX_OK)) == "ok");
  CHECK(std::string(ifx_status_name(IFX_ERR_IO)) == "i/o error");
  CHECK(std::string(ifx_version()).size() > 0);
}

TEST_CASE("null handles are invalid arguments") {
  CHECK(ifx_config_create_default(nullptr) == IFX_ERR_INVALID_ARGUMENT);
  CHECK(ifx_config_set_seed(nullptr, 1) == IFX_ERR_INVALID_ARGUMENT);
  CHECK(ifx_cmd_generate(nullptr, nullptr) == IFX_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ifx_last_error()).size() > 0);
  ifx_config_free(nullptr);
  ifx_dataset_free(nullptr);
  ifx_model_free(nullptr);
}

TEST_CASE("config setters validate their input") {
  ifx_config config = nullptr;
  REQUIRE(ifx_config_create_default(&config) == IFX_OK);
  CHECK(ifx_config_set_workers(config, 0) != IFX_OK);
  CHECK(ifx_config_set_explainers(config, "ifx,unknown") != IFX_OK);
  CHECK(std::string(ifx_last_error()).find("unknown") != std::string::npos);
  CHECK(ifx_config_set_sparsity(config, "0.5,0.2") != IFX_OK);
  CHECK(ifx_config_set_explainers(config, "ifx,random") == IFX_OK);
  CHECK(ifx_config_set_sparsity(config, "0.05:0.2:0.05") == IFX_OK);
  const char* json = nullptr;
  REQUIRE(ifx_config_to_json(config, &json) == IFX_OK);
  CHECK(std::string(json).find("\"random\"") != std::string::npos);
  ifx_config_free(config);

  ifx_config loaded = nullptr;
  CHECK(ifx_config_load("/nonexistent/config.json", &loaded) == IFX_ERR_IO);
  CHECK(loaded == nullptr);
}

TEST_CASE("pipeline through the C interface") {
  const fs::path path = WriteSmallConfig("pipeline");
  const fs::path dir = path.parent_path();
  ifx_config config = nullptr;
  REQUIRE(ifx_config_load(path.string().c_str(), &config) == IFX_OK);
  REQUIRE(ifx_config_set_explainers(config, "ifx,gradient,random") == IFX_OK);

  const char* summary = nullptr;
  CHECK(ifx_cmd_train(config, &summary) == IFX_ERR_IO);
  CHECK(std::string(ifx_last_error()).find("dataset.json") != std::string::npos);

  REQUIRE(ifx_cmd_generate(config, &summary) == IFX_OK);
  REQUIRE(ifx_cmd_train(config, &summary) == IFX_OK);
  REQUIRE(ifx_cmd_explain(config, &summary) == IFX_OK);
  REQUIRE(ifx_cmd_evaluate(config, &summary) == IFX_OK);
  REQUIRE(ifx_cmd_report(config, &summary) == IFX_OK);
  CHECK(std::string(summary).size() > 0);
  CHECK(fs::exists(dir / "reports" / "summary.txt"));
  CHECK(fs::exists(dir / "explanations" / "gradient.json"));

  ifx_dataset dataset = nullptr;
  REQUIRE(ifx_dataset_load((dir / "dataset.json").string().c_str(), &dataset) == IFX_OK);
  size_t graphs = 0;
  REQUIRE(ifx_dataset_graph_count(dataset, &graphs) == IFX_OK);
  CHECK(graphs == 60);
  int classes = 0;
  REQUIRE(ifx_dataset_class_count(dataset, &classes) == IFX_OK);
  CHECK(classes == 3);
  size_t test_count = 0;
  std::vector<int> test(64);
  REQUIRE(ifx_dataset_test_split(dataset, test.data(), test.size(), &test_count) == IFX_OK);
  CHECK(test_count == 9);

  ifx_model model = nullptr;
  REQUIRE(ifx_model_load((dir / "model.json").string().c_str(), &model) == IFX_OK);
  const size_t index = static_cast<size_t>(test[0]);
  int nodes = 0;
  int label = 0;
  REQUIRE(ifx_dataset_graph_info(dataset, index, &nodes, &label) == IFX_OK);

  std::vector<double> probs(3);
  REQUIRE(ifx_model_forward(model, dataset, index, nullptr, 0, probs.data(), 3) == IFX_OK);
  CHECK(std::abs(probs[0] + probs[1] + probs[2] - 1.0) <= 1e-12);
  std::vector<double> ones(nodes, 1.0);
  std::vector<double> again(3);
  REQUIRE(ifx_model_forward(model, dataset, index, ones.data(), ones.size(), again.data(), 3) ==
          IFX_OK);
  CHECK(again == probs);
  CHECK(ifx_model_forward(model, dataset, index, ones.data(), ones.size() - 1, again.data(), 3) ==
        IFX_ERR_INVALID_ARGUMENT);
  CHECK(ifx_model_forward(model, dataset, graphs, nullptr, 0, again.data(), 3) ==
        IFX_ERR_INVALID_ARGUMENT);

  std::vector<double> mask(nodes);
  REQUIRE(ifx_explain(config, model, dataset, index, "random", mask.data(), mask.size()) == IFX_OK);
  std::vector<double> mask_again(nodes);
  REQUIRE(ifx_explain(config, model, dataset, index, "random", mask_again.data(),
                      mask_again.size()) == IFX_OK);
  CHECK(mask == mask_again);
  CHECK(ifx_explain(config, model, dataset, index, "shap", mask.data(), mask.size()) != IFX_OK);

  ifx_model_free(model);
  ifx_dataset_free(dataset);
  ifx_config_free(config);
}

}  // namespace

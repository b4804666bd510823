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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ifx/ifx.h"

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string explainers;
  std::string sparsity;
};

int Report(ifx_status status, const char* what) {
  std::fprintf(stderr, "ifx %s: %s: %s\n", what, ifx_status_name(status), ifx_last_error());
  return 1;
}

// Loads the config file (or defaults) and applies command-line overrides.
ifx_status BuildConfig(const Options& options, ifx_config* config) {
  ifx_status status = options.config_path.empty()
                          ? ifx_config_create_default(config)
                          : ifx_config_load(options.config_path.c_str(), config);
  if (status != IFX_OK) return status;
  if (options.seed) status = ifx_config_set_seed(*config, *options.seed);
  if (status == IFX_OK && options.workers) status = ifx_config_set_workers(*config, *options.workers);
  if (status == IFX_OK && !options.explainers.empty()) {
    status = ifx_config_set_explainers(*config, options.explainers.c_str());
  }
  if (status == IFX_OK && !options.sparsity.empty()) {
    status = ifx_config_set_sparsity(*config, options.sparsity.c_str());
  }
  return status;
}

using Command = ifx_status (*)(ifx_config, const char**);

int Run(const Options& options, const char* name, Command command) {
  ifx_config config = nullptr;
  ifx_status status = BuildConfig(options, &config);
  if (status != IFX_OK) {
    ifx_config_free(config);
    return Report(status, name);
  }
  const char* summary = nullptr;
  status = command(config, &summary);
  if (status == IFX_OK && summary != nullptr) std::printf("%s\n", summary);
  ifx_config_free(config);
  return status == IFX_OK ? 0 : Report(status, name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph classifier explanation toolkit: generate, train, explain, evaluate, report"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ifx_version());

  Options options;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", options.config_path, "Run configuration (JSON)")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", options.seed, "Global seed (overrides the config)");
    sub->add_option("--workers", options.workers, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* generate = app.add_subcommand("generate", "Generate the synthetic dataset");
  auto* train = app.add_subcommand("train", "Train the graph classifier");
  auto* explain = app.add_subcommand("explain", "Explain the test split");
  auto* evaluate = app.add_subcommand("evaluate", "Fidelity, separability and motif recovery");
  auto* report = app.add_subcommand("report", "Summary table and plot-data CSVs");
  for (auto* sub : {generate, train, explain, evaluate, report}) add_common(sub);
  explain->add_option("--explainers", options.explainers, "Comma-separated: ifx,mi,cf,gradient,random");
  evaluate->add_option("--sparsity", options.sparsity, "Sparsity set lo:hi:step, e.g. 0.01:0.10:0.01");

  CLI11_PARSE(app, argc, argv);

  if (generate->parsed()) return Run(options, "generate", ifx_cmd_generate);
  if (train->parsed()) return Run(options, "train", ifx_cmd_train);
  if (explain->parsed()) return Run(options, "explain", ifx_cmd_explain);
  if (evaluate->parsed()) return Run(options, "evaluate", ifx_cmd_evaluate);
  return Run(options, "report", ifx_cmd_report);
}

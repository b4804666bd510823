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

#include "ifx/ifx.h"

#include <exception>
#include <new>
#include <string>

#include "ifx/error.hpp"
#include "ifx/explainer.hpp"
#include "ifx/generator.hpp"
#include "ifx/gnn.hpp"
#include "ifx/pipeline.hpp"
#include "ifx/rng.hpp"
#include "ifx/run_config.hpp"

struct ifx_config_s {
  ifx::RunConfig config;
  std::string text;
};

struct ifx_dataset_s {
  ifx::Dataset dataset;
};

struct ifx_model_s {
  ifx::GnnModel model;
};

namespace {

thread_local std::string last_error;

ifx_status StatusOf(ifx::ErrorKind kind) {
  switch (kind) {
    case ifx::ErrorKind::kInvalidArgument:
      return IFX_ERR_INVALID_ARGUMENT;
    case ifx::ErrorKind::kIo:
      return IFX_ERR_IO;
    case ifx::ErrorKind::kParse:
      return IFX_ERR_PARSE;
    case ifx::ErrorKind::kValidation:
      return IFX_ERR_VALIDATION;
    case ifx::ErrorKind::kNumeric:
      return IFX_ERR_NUMERIC;
  }
  return IFX_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
ifx_status Guard(Body&& body) {
  try {
    body();
    return IFX_OK;
  } catch (const ifx::Error& e) {
    last_error = e.what();
    return StatusOf(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return IFX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return IFX_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return IFX_ERR_INTERNAL;
  }
}

template <typename T>
void RequireHandle(const T* handle, const char* what) {
  if (handle == nullptr) ifx::Fail(ifx::ErrorKind::kInvalidArgument, std::string(what) + " is null");
}

const ifx::Graph& GraphAt(const ifx_dataset_s* dataset, size_t index) {
  RequireHandle(dataset, "dataset");
  if (index >= dataset->dataset.graphs.size()) {
    ifx::Fail(ifx::ErrorKind::kInvalidArgument, "graph index " + std::to_string(index) +
                                                    " out of range");
  }
  return dataset->dataset.graphs[index];
}

Eigen::VectorXd MaskFrom(const double* mask, size_t length, const ifx::Graph& graph) {
  if (mask == nullptr) return Eigen::VectorXd::Ones(graph.node_count);
  if (length != static_cast<size_t>(graph.node_count)) {
    ifx::Fail(ifx::ErrorKind::kInvalidArgument, "mask length " + std::to_string(length) +
                                                    " differs from node count " +
                                                    std::to_string(graph.node_count));
  }
  return Eigen::Map<const Eigen::VectorXd>(mask, static_cast<Eigen::Index>(length));
}

template <typename Command>
ifx_status RunCommand(ifx_config config, const char** summary, Command&& command) {
  return Guard([&] {
    RequireHandle(config, "config");
    ifx::ValidateRunConfig(config->config);
    const ifx::CommandResult result = command(config->config);
    config->text = result.message;
    if (summary != nullptr) *summary = config->text.c_str();
  });
}

}  // namespace

extern "C" {

const char* ifx_version(void) { return "1.0.0"; }

const char* ifx_last_error(void) { return last_error.c_str(); }

const char* ifx_status_name(ifx_status status) {
  switch (status) {
    case IFX_OK:
      return "ok";
    case IFX_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case IFX_ERR_IO:
      return "i/o error";
    case IFX_ERR_PARSE:
      return "parse error";
    case IFX_ERR_VALIDATION:
      return "validation error";
    case IFX_ERR_NUMERIC:
      return "numeric error";
    case IFX_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

ifx_status ifx_config_create_default(ifx_config* out) {
  return Guard([&] {
    RequireHandle(out, "out");
    auto handle = new ifx_config_s{};
    handle->config.SyncSeeds();
    *out = handle;
  });
}

ifx_status ifx_config_load(const char* path, ifx_config* out) {
  return Guard([&] {
    RequireHandle(path, "path");
    RequireHandle(out, "out");
    *out = new ifx_config_s{ifx::LoadRunConfig(path), {}};
  });
}

void ifx_config_free(ifx_config config) { delete config; }

ifx_status ifx_config_set_seed(ifx_config config, uint64_t seed) {
  return Guard([&] {
    RequireHandle(config, "config");
    config->config.seed = seed;
    config->config.SyncSeeds();
  });
}

ifx_status ifx_config_set_workers(ifx_config config, int workers) {
  return Guard([&] {
    RequireHandle(config, "config");
    if (workers < 1) ifx::Fail(ifx::ErrorKind::kInvalidArgument, "workers must be at least 1");
    config->config.worker_count = workers;
  });
}

ifx_status ifx_config_set_explainers(ifx_config config, const char* names) {
  return Guard([&] {
    RequireHandle(config, "config");
    RequireHandle(names, "names");
    config->config.explainers = ifx::ParseExplainerList(names);
  });
}

ifx_status ifx_config_set_sparsity(ifx_config config, const char* spec) {
  return Guard([&] {
    RequireHandle(config, "config");
    RequireHandle(spec, "spec");
    config->config.metrics.sparsity_set = ifx::ParseSparsitySpec(spec);
  });
}

ifx_status ifx_config_to_json(ifx_config config, const char** out) {
  return Guard([&] {
    RequireHandle(config, "config");
    RequireHandle(out, "out");
    config->text = ifx::RunConfigToJson(config->config);
    *out = config->text.c_str();
  });
}

ifx_status ifx_cmd_generate(ifx_config config, const char** summary) {
  return RunCommand(config, summary, ifx::CmdGenerate);
}

ifx_status ifx_cmd_train(ifx_config config, const char** summary) {
  return RunCommand(config, summary, ifx::CmdTrain);
}

ifx_status ifx_cmd_explain(ifx_config config, const char** summary) {
  return RunCommand(config, summary, ifx::CmdExplain);
}

ifx_status ifx_cmd_evaluate(ifx_config config, const char** summary) {
  return RunCommand(config, summary, ifx::CmdEvaluate);
}

ifx_status ifx_cmd_report(ifx_config config, const char** summary) {
  return RunCommand(config, summary, ifx::CmdReport);
}

ifx_status ifx_dataset_generate(ifx_config config, ifx_dataset* out) {
  return Guard([&] {
    RequireHandle(config, "config");
    RequireHandle(out, "out");
    ifx::GeneratorConfig generator = config->config.generator;
    generator.seed = config->config.seed;
    *out = new ifx_dataset_s{ifx::GenerateDataset(generator)};
  });
}

ifx_status ifx_dataset_load(const char* path, ifx_dataset* out) {
  return Guard([&] {
    RequireHandle(path, "path");
    RequireHandle(out, "out");
    *out = new ifx_dataset_s{ifx::LoadDataset(path)};
  });
}

ifx_status ifx_dataset_save(ifx_dataset dataset, const char* path) {
  return Guard([&] {
    RequireHandle(dataset, "dataset");
    RequireHandle(path, "path");
    ifx::SaveDataset(dataset->dataset, path);
  });
}

void ifx_dataset_free(ifx_dataset dataset) { delete dataset; }

ifx_status ifx_dataset_graph_count(ifx_dataset dataset, size_t* out) {
  return Guard([&] {
    RequireHandle(dataset, "dataset");
    RequireHandle(out, "out");
    *out = dataset->dataset.graphs.size();
  });
}

ifx_status ifx_dataset_class_count(ifx_dataset dataset, int* out) {
  return Guard([&] {
    RequireHandle(dataset, "dataset");
    RequireHandle(out, "out");
    *out = dataset->dataset.class_count();
  });
}

ifx_status ifx_dataset_graph_info(ifx_dataset dataset, size_t index, int* node_count, int* label) {
  return Guard([&] {
    const ifx::Graph& graph = GraphAt(dataset, index);
    if (node_count != nullptr) *node_count = graph.node_count;
    if (label != nullptr) *label = graph.label;
  });
}

ifx_status ifx_dataset_test_split(ifx_dataset dataset, int* indices, size_t capacity,
                                  size_t* count) {
  return Guard([&] {
    RequireHandle(dataset, "dataset");
    const auto& test = dataset->dataset.splits.test;
    if (count != nullptr) *count = test.size();
    if (indices != nullptr) {
      for (size_t i = 0; i < test.size() && i < capacity; ++i) indices[i] = test[i];
    }
  });
}

ifx_status ifx_model_load(const char* path, ifx_model* out) {
  return Guard([&] {
    RequireHandle(path, "path");
    RequireHandle(out, "out");
    *out = new ifx_model_s{ifx::LoadModel(path)};
  });
}

void ifx_model_free(ifx_model model) { delete model; }

ifx_status ifx_model_class_count(ifx_model model, int* out) {
  return Guard([&] {
    RequireHandle(model, "model");
    RequireHandle(out, "out");
    *out = model->model.class_count;
  });
}

ifx_status ifx_model_forward(ifx_model model, ifx_dataset dataset, size_t index,
                             const double* mask, size_t mask_length, double* probs,
                             size_t probs_length) {
  return Guard([&] {
    RequireHandle(model, "model");
    RequireHandle(probs, "probs");
    const ifx::Graph& graph = GraphAt(dataset, index);
    if (probs_length != static_cast<size_t>(model->model.class_count)) {
      ifx::Fail(ifx::ErrorKind::kInvalidArgument, "probs must hold class_count entries");
    }
    const Eigen::VectorXd p = ifx::Forward(model->model, graph, MaskFrom(mask, mask_length, graph));
    for (Eigen::Index c = 0; c < p.size(); ++c) probs[c] = p[c];
  });
}

ifx_status ifx_model_predict(ifx_model model, ifx_dataset dataset, size_t index, int* out) {
  return Guard([&] {
    RequireHandle(model, "model");
    RequireHandle(out, "out");
    *out = ifx::Predict(model->model, GraphAt(dataset, index));
  });
}

ifx_status ifx_explain(ifx_config config, ifx_model model, ifx_dataset dataset, size_t index,
                       const char* explainer, double* mask, size_t mask_length) {
  return Guard([&] {
    RequireHandle(config, "config");
    RequireHandle(model, "model");
    RequireHandle(explainer, "explainer");
    RequireHandle(mask, "mask");
    const ifx::Graph& graph = GraphAt(dataset, index);
    if (mask_length != static_cast<size_t>(graph.node_count)) {
      ifx::Fail(ifx::ErrorKind::kInvalidArgument, "mask buffer length differs from node count");
    }
    ifx::ExplainerConfig ex = config->config.explainer;
    ex.seed = ifx::DeriveSeed(config->config.seed, index);
    const ifx::Explanation e = ifx::Explain(explainer, model->model, graph, ex);
    for (Eigen::Index i = 0; i < e.mask.size(); ++i) mask[i] = e.mask[i];
  });
}

}  // extern "C"

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

/* C interface to the ifx library.
 *
 * Objects are opaque handles created by *_create / *_load functions and
 * released with the matching *_free. Every fallible call returns an
 * ifx_status; on failure ifx_last_error() describes the problem. The error
 * message is thread-local and valid until the next failing call on the same
 * thread.
 */
#ifndef IFX_IFX_H_
#define IFX_IFX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(IFX_BUILDING_LIBRARY)
#define IFX_API __attribute__((visibility("default")))
#else
#define IFX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ifx_status {
  IFX_OK = 0,
  IFX_ERR_INVALID_ARGUMENT = 1,
  IFX_ERR_IO = 2,
  IFX_ERR_PARSE = 3,
  IFX_ERR_VALIDATION = 4,
  IFX_ERR_NUMERIC = 5,
  IFX_ERR_INTERNAL = 6
} ifx_status;

typedef struct ifx_config_s* ifx_config;
typedef struct ifx_dataset_s* ifx_dataset;
typedef struct ifx_model_s* ifx_model;

IFX_API const char* ifx_version(void);
IFX_API const char* ifx_last_error(void);
IFX_API const char* ifx_status_name(ifx_status status);

/* ---- run configuration ------------------------------------------------- */

IFX_API ifx_status ifx_config_create_default(ifx_config* out);
IFX_API ifx_status ifx_config_load(const char* path, ifx_config* out);
IFX_API void ifx_config_free(ifx_config config);

IFX_API ifx_status ifx_config_set_seed(ifx_config config, uint64_t seed);
IFX_API ifx_status ifx_config_set_workers(ifx_config config, int workers);
/* Comma-separated subset of ifx,mi,cf,gradient,random. */
IFX_API ifx_status ifx_config_set_explainers(ifx_config config, const char* names);
/* Metric sparsity set: "lo:hi:step" or a comma-separated list. */
IFX_API ifx_status ifx_config_set_sparsity(ifx_config config, const char* spec);
/* Effective configuration as JSON. The string is owned by the handle and
 * valid until the next call on it. */
IFX_API ifx_status ifx_config_to_json(ifx_config config, const char** out);

/* ---- pipeline commands ----------------------------------------------------
 * `summary` (may be NULL) receives a human-readable result owned by the
 * config handle, valid until the next command on it. */

IFX_API ifx_status ifx_cmd_generate(ifx_config config, const char** summary);
IFX_API ifx_status ifx_cmd_train(ifx_config config, const char** summary);
IFX_API ifx_status ifx_cmd_explain(ifx_config config, const char** summary);
IFX_API ifx_status ifx_cmd_evaluate(ifx_config config, const char** summary);
IFX_API ifx_status ifx_cmd_report(ifx_config config, const char** summary);

/* ---- datasets ---------------------------------------------------------- */

IFX_API ifx_status ifx_dataset_generate(ifx_config config, ifx_dataset* out);
IFX_API ifx_status ifx_dataset_load(const char* path, ifx_dataset* out);
IFX_API ifx_status ifx_dataset_save(ifx_dataset dataset, const char* path);
IFX_API void ifx_dataset_free(ifx_dataset dataset);

IFX_API ifx_status ifx_dataset_graph_count(ifx_dataset dataset, size_t* out);
IFX_API ifx_status ifx_dataset_class_count(ifx_dataset dataset, int* out);
IFX_API ifx_status ifx_dataset_graph_info(ifx_dataset dataset, size_t index, int* node_count,
                                          int* label);
/* Graph indices of the test split; `capacity` entries at most, `count`
 * receives the split size. */
IFX_API ifx_status ifx_dataset_test_split(ifx_dataset dataset, int* indices, size_t capacity,
                                          size_t* count);

/* ---- models ------------------------------------------------------------ */

IFX_API ifx_status ifx_model_load(const char* path, ifx_model* out);
IFX_API void ifx_model_free(ifx_model model);
IFX_API ifx_status ifx_model_class_count(ifx_model model, int* out);

/* Class probabilities for graph `index` under `mask` (length = node count;
 * NULL means all ones). `probs` must hold class_count entries. */
IFX_API ifx_status ifx_model_forward(ifx_model model, ifx_dataset dataset, size_t index,
                                     const double* mask, size_t mask_length, double* probs,
                                     size_t probs_length);
IFX_API ifx_status ifx_model_predict(ifx_model model, ifx_dataset dataset, size_t index,
                                     int* out);

/* ---- explanations ------------------------------------------------------ */

/* Node mask from the named explainer using the config's explainer section
 * and the per-graph seed derived from the config seed. */
IFX_API ifx_status ifx_explain(ifx_config config, ifx_model model, ifx_dataset dataset,
                               size_t index, const char* explainer, double* mask,
                               size_t mask_length);

#ifdef __cplusplus
}
#endif

#endif /* IFX_IFX_H_ */

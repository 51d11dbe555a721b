/* Copyright 2026 The ogsum Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the ogsum library: over-generate fixed-length summaries,
 * then select one. Every fallible call returns an ogs_status; on failure
 * ogs_last_error() describes the problem (per thread). Handles are opaque
 * and must be released with the matching _free function. */

#ifndef OGSUM_OGSUM_H_
#define OGSUM_OGSUM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(OGSUM_BUILDING_LIBRARY)
#define OGS_API __attribute__((visibility("default")))
#else
#define OGS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ogs_status {
  OGS_OK = 0,
  OGS_INVALID_ARGUMENT = 1,
  OGS_IO = 2,
  OGS_FORMAT = 3,
  OGS_OUT_OF_RANGE = 4,
  OGS_NUMERIC = 5,
  OGS_STAGE = 6,
  OGS_INTERNAL = 7,
  OGS_BUFFER_TOO_SMALL = 8
} ogs_status;

typedef struct ogs_config ogs_config;
typedef struct ogs_vocab ogs_vocab;
typedef struct ogs_generator ogs_generator;
typedef struct ogs_selector ogs_selector;

typedef struct ogs_rouge_score {
  double precision;
  double recall;
  double f1;
} ogs_rouge_score;

OGS_API const char* ogs_version(void);
OGS_API const char* ogs_status_name(ogs_status status);
/* Message of the last failed call on this thread; "" if none. */
OGS_API const char* ogs_last_error(void);

/* level: 0 info, 1 warning. A NULL callback restores logging to stderr. */
typedef void (*ogs_log_fn)(int level, const char* message, void* user);
OGS_API void ogs_set_log_callback(ogs_log_fn fn, void* user);
OGS_API void ogs_set_log_quiet(int quiet);

/* Configuration: every key starts at its default. */
OGS_API ogs_status ogs_config_new(ogs_config** out);
/* Relative paths in the file resolve against the file's directory. */
OGS_API ogs_status ogs_config_load(const char* path, ogs_config** out);
OGS_API ogs_status ogs_config_set(ogs_config* config, const char* key,
                                  const char* value);
/* "key=value". */
OGS_API ogs_status ogs_config_override(ogs_config* config, const char* assignment);
/* String outputs: *needed receives the size including the terminating NUL;
 * OGS_BUFFER_TOO_SMALL when cap is smaller (buf may be NULL then). */
OGS_API ogs_status ogs_config_get(const ogs_config* config, const char* key,
                                  char* buf, size_t cap, size_t* needed);
OGS_API ogs_status ogs_config_snapshot(const ogs_config* config, char* buf,
                                       size_t cap, size_t* needed);
/* Resolves and range-checks every value without running anything. */
OGS_API ogs_status ogs_config_validate(const ogs_config* config);
OGS_API void ogs_config_free(ogs_config* config);

/* Pipeline stages; artifacts live in the configured out_dir. */
OGS_API ogs_status ogs_stage_train_generator(const ogs_config* config);
OGS_API ogs_status ogs_stage_generate(const ogs_config* config);
OGS_API ogs_status ogs_stage_build_corruptions(const ogs_config* config);
OGS_API ogs_status ogs_stage_train_selector(const ogs_config* config);
/* modes: comma-separated subset of quality,length,lennorm,average; NULL or
 * "" selects all four. */
OGS_API ogs_status ogs_stage_select(const ogs_config* config, const char* modes);
OGS_API ogs_status ogs_stage_evaluate(const ogs_config* config);
/* All stages in order plus the manifest. Stage failures return OGS_STAGE. */
OGS_API ogs_status ogs_run_pipeline(const ogs_config* config);
/* Writes n synthetic (source, summary) pairs as TSV. */
OGS_API ogs_status ogs_synth_corpus(size_t n, uint64_t seed, const char* path);

/* Vocabulary. */
OGS_API ogs_status ogs_vocab_load(const char* path, ogs_vocab** out);
OGS_API size_t ogs_vocab_size(const ogs_vocab* vocab);
/* *count receives the number of ids; OGS_BUFFER_TOO_SMALL if cap < count. */
OGS_API ogs_status ogs_vocab_encode(const ogs_vocab* vocab, const char* text,
                                    int32_t* ids, size_t cap, size_t* count);
OGS_API ogs_status ogs_vocab_decode(const ogs_vocab* vocab, const int32_t* ids,
                                    size_t n, char* buf, size_t cap,
                                    size_t* needed);
OGS_API void ogs_vocab_free(ogs_vocab* vocab);

/* Generator. The handle keeps its own copy of the vocabulary. */
OGS_API ogs_status ogs_generator_load(const char* checkpoint,
                                      const ogs_vocab* vocab,
                                      ogs_generator** out);
OGS_API size_t ogs_generator_max_length(const ogs_generator* gen);
/* Best summary of exactly `length` tokens under beam size `beam`. tokens and
 * order must hold `length` entries; order[j] is the step that filled slot j
 * (from 1). score is the natural-log likelihood. */
OGS_API ogs_status ogs_generator_decode(const ogs_generator* gen,
                                        const char* source, size_t length,
                                        size_t beam, int32_t* tokens,
                                        int32_t* order, double* score);
/* Greedy left-to-right length estimate. */
OGS_API ogs_status ogs_generator_predict_length(const ogs_generator* gen,
                                                const char* source,
                                                size_t* length, int* truncated);
OGS_API void ogs_generator_free(ogs_generator* gen);

/* Quality selector. */
OGS_API ogs_status ogs_selector_load(const char* path, ogs_selector** out);
OGS_API ogs_status ogs_selector_predict(const ogs_selector* sel,
                                        const char* source, const char* summary,
                                        double* probability);
OGS_API void ogs_selector_free(ogs_selector* sel);

/* Closed-form scorers. */
OGS_API ogs_status ogs_score_length_norm(double log_likelihood, size_t length,
                                         double p, double* out);
OGS_API double ogs_score_reward(double log_likelihood, size_t length,
                                double predicted_length, double r);

/* ROUGE F1 family; n is 1 or 2. */
OGS_API ogs_status ogs_rouge_n(const char* candidate, const char* reference,
                               int n, ogs_rouge_score* out);
OGS_API ogs_status ogs_rouge_l(const char* candidate, const char* reference,
                               ogs_rouge_score* out);

#ifdef __cplusplus
}
#endif

#endif /* OGSUM_OGSUM_H_ */

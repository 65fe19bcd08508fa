/*
 * Copyright 2026 The nucsearch Authors. All Rights Reserved.
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

/*
 * nucsearch C API.
 *
 * Sequence decoding over autoregressive probability models with beam search,
 * p-exact (nucleus-pruned best-first) search and dynamic beam search.
 *
 * Conventions:
 *  - Every fallible call returns ns_status. On failure, ns_last_error()
 *    returns a message for the calling thread until its next failing call.
 *  - Objects are opaque handles created by ns_*_create/load/... and released
 *    with the matching ns_*_free. Free functions accept NULL.
 *  - Strings returned through char** are heap allocated; release them with
 *    ns_string_free.
 *  - Models are immutable and may be shared across threads. Configs and
 *    results are not synchronized.
 */

#ifndef NUCSEARCH_NUCSEARCH_H_
#define NUCSEARCH_NUCSEARCH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(NUCSEARCH_BUILDING)
#define NS_API __attribute__((visibility("default")))
#else
#define NS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ns_status {
  NS_OK = 0,
  NS_ERR_INVALID_ARGUMENT = 1,
  NS_ERR_MODEL_NOT_FOUND = 2,
  NS_ERR_PARSE = 3,
  NS_ERR_UNKNOWN_CONTEXT = 4,
  NS_ERR_INVALID_TOKEN_ID = 5,
  NS_ERR_MISPLACED_EOS = 6,
  NS_ERR_INVALID_THRESHOLD = 7,
  NS_ERR_EMPTY_CORPUS = 8,
  NS_ERR_NO_FINISHED_HYPOTHESIS = 9,
  NS_ERR_UNFINISHED_HYPOTHESIS = 10,
  NS_ERR_EMPTY_RESULT = 11,
  NS_ERR_SPACE_TOO_LARGE = 12,
  NS_ERR_MISSING_TRACE = 13,
  NS_ERR_IO = 14,
  NS_ERR_INTERNAL = 15
} ns_status;

typedef enum ns_algorithm {
  NS_ALGO_BEAM = 0,
  NS_ALGO_P_EXACT = 1,
  NS_ALGO_DYNAMIC = 2
} ns_algorithm;

typedef enum ns_scoring {
  NS_SCORING_ORIGINAL = 0,
  NS_SCORING_RENORMALIZED = 1
} ns_scoring;

typedef enum ns_on_unfinished {
  NS_ON_UNFINISHED_ERROR = 0,
  NS_ON_UNFINISHED_RETURN_FLAGGED = 1
} ns_on_unfinished;

typedef struct ns_model ns_model;
typedef struct ns_config ns_config;
typedef struct ns_result ns_result;

NS_API const char* ns_version(void);
NS_API const char* ns_status_name(ns_status status);
NS_API const char* ns_last_error(void);
NS_API void ns_string_free(char* s);

/* ---- Models ------------------------------------------------------------ */

NS_API ns_status ns_model_load(const char* path, ns_model** out);
NS_API ns_status ns_model_parse(const char* json, size_t len, ns_model** out);
/* Newline-separated corpus; every non-blank line ends with an implicit </s>. */
NS_API ns_status ns_model_train_ngram(const char* corpus, size_t len, int order,
                                      double add_k, ns_model** out);
NS_API ns_status ns_model_random(uint64_t seed, size_t vocab_size,
                                 size_t max_prefix_len, double concentration,
                                 ns_model** out);
NS_API ns_status ns_model_save(const ns_model* model, const char* path);
NS_API void ns_model_free(ns_model* model);

NS_API size_t ns_model_vocab_size(const ns_model* model);
NS_API int32_t ns_model_eos_id(const ns_model* model);
/* NULL when id is out of range. The pointer lives as long as the model. */
NS_API const char* ns_model_token(const ns_model* model, int32_t id);
NS_API ns_status ns_model_token_id(const ns_model* model, const char* token,
                                   int32_t* out);

/* context may be NULL or "" for the unconditional model. probs_out must hold
 * ns_model_vocab_size() entries. */
NS_API ns_status ns_model_next_distribution(const ns_model* model, const char* context,
                                            const int32_t* prefix, size_t prefix_len,
                                            double* probs_out, size_t probs_len);
/* Sum of natural-log step probabilities of a sequence ending in </s>. */
NS_API ns_status ns_model_score_sequence(const ns_model* model, const char* context,
                                         const int32_t* tokens, size_t len,
                                         double* out);

/* ---- Tail pruning ------------------------------------------------------ */

/* ids_out must hold n entries; *count_out receives the nucleus size. */
NS_API ns_status ns_nucleus(const double* probs, size_t n, double p, int32_t* ids_out,
                            size_t* count_out, double* mass_out);
NS_API ns_status ns_tail_prune(const double* probs, size_t n, double p, double* out);

/* ---- Search configuration ---------------------------------------------- */

/* Defaults: k 5, p 0.6, candidate cap 320, no k cap, max steps 200,
 * on_unfinished error, original scoring, no trace. */
NS_API ns_status ns_config_create(ns_algorithm algorithm, ns_config** out);
NS_API void ns_config_free(ns_config* config);
NS_API ns_status ns_config_set_k(ns_config* config, size_t k);
NS_API ns_status ns_config_set_p(ns_config* config, double p);
NS_API ns_status ns_config_set_candidate_cap(ns_config* config, size_t cap);
/* 0 removes the cap. */
NS_API ns_status ns_config_set_k_cap(ns_config* config, size_t k_cap);
NS_API ns_status ns_config_set_max_steps(ns_config* config, size_t max_steps);
NS_API ns_status ns_config_set_on_unfinished(ns_config* config, ns_on_unfinished mode);
NS_API ns_status ns_config_set_scoring(ns_config* config, ns_scoring scoring);
NS_API ns_status ns_config_set_trace(ns_config* config, int enabled);
NS_API ns_status ns_config_validate(const ns_config* config);
NS_API ns_status ns_config_params_json(const ns_config* config, char** out);

/* ---- Search ------------------------------------------------------------ */

NS_API ns_status ns_search(const ns_model* model, const char* context,
                           const ns_config* config, ns_result** out);
/* New result sorted by length-normalized score (ascending). */
NS_API ns_status ns_result_rerank(const ns_result* result, ns_result** out);
NS_API void ns_result_free(ns_result* result);

NS_API size_t ns_result_count(const ns_result* result);
/* Nonzero when the single returned hypothesis is a flagged unfinished one. */
NS_API int ns_result_unfinished(const ns_result* result);
NS_API ns_status ns_result_hypothesis(const ns_result* result, size_t index,
                                      const int32_t** tokens, size_t* len,
                                      double* logprob);
/* Only available on reranked results. */
NS_API ns_status ns_result_norm_score(const ns_result* result, size_t index,
                                      double* out);
NS_API ns_status ns_result_rank_history(const ns_result* result, size_t index,
                                        const uint32_t** ranks, size_t* len);
NS_API size_t ns_result_trace_length(const ns_result* result);
/* nucleus_mass receives NaN for steps without one. Any out pointer may be NULL. */
NS_API ns_status ns_result_trace_step(const ns_result* result, size_t step,
                                      size_t* pool_size, size_t* width,
                                      double* nucleus_mass);

/* ---- Batch harness ----------------------------------------------------- */

typedef struct ns_decode_options {
  int trace;
  int rerank;
  size_t jobs; /* 0 = hardware concurrency */
} ns_decode_options;

typedef struct ns_batch_summary {
  size_t succeeded;
  size_t unfinished;
  size_t data_failures;
  size_t search_failures;
  int exit_code; /* 0 ok, 2 data error, 3 search failure */
} ns_batch_summary;

/* Decodes a JSONL instance file ({"id": ..., "context": ...} per line) into
 * a JSONL output file sorted by id. Per-instance failures are written as
 * error records and counted in *summary; the call itself still returns
 * NS_OK. */
NS_API ns_status ns_decode_file(const ns_model* model, const ns_config* config,
                                const char* input_path, const char* output_path,
                                const ns_decode_options* options,
                                ns_batch_summary* summary);

/* Runs every grid cell; writes <output_dir>/<cell>.jsonl and summary.tsv.
 * *summary_json (optional) receives per-cell statistics. */
NS_API ns_status ns_sweep(const ns_model* model, const char* grid_path,
                          const char* input_path, const char* output_dir,
                          size_t jobs, char** summary_json);

typedef struct ns_oracle_options {
  size_t models;
  uint64_t base_seed;
  size_t min_vocab;
  size_t max_vocab;
  size_t max_prefix_len;
  double concentration;
  const double* ps;
  size_t num_ps;
  int check_original;
  int check_renormalized;
  size_t candidate_cap;
  double tolerance;
} ns_oracle_options;

/* 200 models, seed 1, vocab 3..6, prefix length 4, concentration 1,
 * p in {0.3, 0.5, 0.7, 0.9}, both scorings, cap 10^6, tolerance 1e-12. */
NS_API void ns_oracle_options_default(ns_oracle_options* options);

/* With model == NULL runs the seeded random-model suite; otherwise checks the
 * given model under `context` with sequences of at most max_len tokens.
 * *passed is set to 1 when every case matches. */
NS_API ns_status ns_oracle_check(const ns_oracle_options* options, const ns_model* model,
                                 const char* context, size_t max_len,
                                 char** report_json, int* passed);

NS_API ns_status ns_analyze_ranks_file(const char* decode_output_path, uint32_t threshold,
                                       char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NUCSEARCH_NUCSEARCH_H_ */

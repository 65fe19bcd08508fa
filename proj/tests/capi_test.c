/* Copyright 2026 The nucsearch Authors. All Rights Reserved.
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

/* Exercises the shared library through its C interface only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "nucsearch/nucsearch.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const char kModel[] =
    "{\"type\":\"table\",\"vocab\":[\"a\",\"b\",\"</s>\"],"
    "\"entries\":{\"\":{\"\":[0.4,0.4,0.2]}},"
    "\"fallback\":[0.3333333333333333,0.3333333333333333,0.3333333333333334]}";

static void test_model(void) {
  ns_model* m = NULL;
  EXPECT(ns_model_parse(kModel, strlen(kModel), &m) == NS_OK);
  EXPECT(ns_model_vocab_size(m) == 3);
  EXPECT(ns_model_eos_id(m) == 2);
  EXPECT(strcmp(ns_model_token(m, 1), "b") == 0);
  EXPECT(ns_model_token(m, 3) == NULL);
  int32_t id = -1;
  EXPECT(ns_model_token_id(m, "</s>", &id) == NS_OK && id == 2);
  EXPECT(ns_model_token_id(m, "zzz", &id) == NS_ERR_INVALID_TOKEN_ID);

  double probs[3];
  EXPECT(ns_model_next_distribution(m, NULL, NULL, 0, probs, 3) == NS_OK);
  EXPECT(fabs(probs[0] - 0.4) < 1e-12);
  const int32_t eos_prefix[] = {2};
  EXPECT(ns_model_next_distribution(m, "", eos_prefix, 1, probs, 3) ==
         NS_ERR_INVALID_TOKEN_ID);
  EXPECT(strlen(ns_last_error()) > 0);

  const int32_t seq[] = {0, 2};
  double score = 0;
  EXPECT(ns_model_score_sequence(m, "", seq, 2, &score) == NS_OK);
  EXPECT(fabs(score - log(0.4 / 3)) < 1e-9);
  const int32_t bad[] = {2, 0};
  EXPECT(ns_model_score_sequence(m, "", bad, 2, &score) == NS_ERR_MISPLACED_EOS);
  ns_model_free(m);

  EXPECT(ns_model_load("/nonexistent/model.json", &m) == NS_ERR_MODEL_NOT_FOUND);
  EXPECT(strcmp(ns_status_name(NS_ERR_MODEL_NOT_FOUND), "ModelNotFound") == 0);
  EXPECT(ns_model_parse("{", 1, &m) == NS_ERR_PARSE);
  EXPECT(ns_model_train_ngram("", 0, 2, 1.0, &m) == NS_ERR_EMPTY_CORPUS);

  const char corpus[] = "a a b\n";
  EXPECT(ns_model_train_ngram(corpus, strlen(corpus), 1, 1.0, &m) == NS_OK);
  EXPECT(ns_model_next_distribution(m, "", NULL, 0, probs, 3) == NS_OK);
  EXPECT(fabs(probs[0] - 3.0 / 7) < 1e-12);
  ns_model_free(m);
  ns_model_free(NULL);
}

static void test_pruning(void) {
  const double probs[] = {0.4, 0.35, 0.25};
  int32_t ids[3];
  size_t count = 0;
  double mass = 0;
  EXPECT(ns_nucleus(probs, 3, 0.6, ids, &count, &mass) == NS_OK);
  EXPECT(count == 2 && ids[0] == 0 && ids[1] == 1);
  EXPECT(fabs(mass - 0.75) < 1e-15);
  double out[3];
  EXPECT(ns_tail_prune(probs, 3, 0.6, out) == NS_OK);
  EXPECT(fabs(out[0] - 0.4 / 0.75) < 1e-15 && out[2] == 0.0);
  EXPECT(ns_tail_prune(probs, 3, 0.0, out) == NS_ERR_INVALID_THRESHOLD);
}

static void test_search(void) {
  ns_model* m = NULL;
  ns_config* c = NULL;
  ns_result* r = NULL;
  ns_result* rr = NULL;
  EXPECT(ns_model_parse(kModel, strlen(kModel), &m) == NS_OK);
  EXPECT(ns_config_create(NS_ALGO_P_EXACT, &c) == NS_OK);
  EXPECT(ns_config_set_p(c, 0.7) == NS_OK);
  EXPECT(ns_config_set_max_steps(c, 3) == NS_OK);
  EXPECT(ns_config_set_trace(c, 1) == NS_OK);
  EXPECT(ns_config_set_p(c, 1.5) == NS_ERR_INVALID_THRESHOLD);
  EXPECT(ns_config_validate(c) == NS_OK);

  char* params = NULL;
  EXPECT(ns_config_params_json(c, &params) == NS_OK);
  EXPECT(strstr(params, "\"algorithm\":\"p_exact\"") != NULL);
  ns_string_free(params);

  EXPECT(ns_search(m, "", c, &r) == NS_OK);
  EXPECT(ns_result_count(r) >= 1);
  EXPECT(!ns_result_unfinished(r));
  const int32_t* toks = NULL;
  size_t len = 0;
  double lp = 0;
  EXPECT(ns_result_hypothesis(r, 0, &toks, &len, &lp) == NS_OK);
  EXPECT(len == 2 && toks[0] == 0 && toks[1] == 2);
  EXPECT(fabs(exp(lp) - 0.4 / 3) < 1e-9);
  const uint32_t* ranks = NULL;
  EXPECT(ns_result_rank_history(r, 0, &ranks, &len) == NS_OK);
  EXPECT(len == 2 && ranks[0] == 1);
  EXPECT(ns_result_trace_length(r) >= 1);
  size_t pool = 0, width = 0;
  EXPECT(ns_result_trace_step(r, 0, &pool, &width, NULL) == NS_OK);
  EXPECT(width >= 1 && width <= pool);
  EXPECT(ns_result_hypothesis(r, 99, &toks, &len, &lp) == NS_ERR_INVALID_ARGUMENT);
  double ns = 0;
  EXPECT(ns_result_norm_score(r, 0, &ns) == NS_ERR_INVALID_ARGUMENT);

  EXPECT(ns_result_rerank(r, &rr) == NS_OK);
  EXPECT(ns_result_norm_score(rr, 0, &ns) == NS_OK);
  EXPECT(ns > 0);
  ns_result_free(rr);
  ns_result_free(r);

  ns_model_free(m);

  static const char kBare[] =
      "{\"type\":\"table\",\"vocab\":[\"a\",\"</s>\"],\"entries\":{\"\":{\"\":[0.5,0.5]}}}";
  EXPECT(ns_model_parse(kBare, strlen(kBare), &m) == NS_OK);
  EXPECT(ns_search(m, "missing", c, &r) == NS_ERR_UNKNOWN_CONTEXT);
  ns_config_free(c);
  ns_model_free(m);
}

static void test_oracle(void) {
  ns_oracle_options opts;
  ns_oracle_options_default(&opts);
  EXPECT(opts.models == 200);
  opts.models = 4;
  char* report = NULL;
  int passed = 0;
  EXPECT(ns_oracle_check(&opts, NULL, NULL, 0, &report, &passed) == NS_OK);
  EXPECT(passed == 1);
  EXPECT(strstr(report, "\"verdict\":\"pass\"") != NULL);
  ns_string_free(report);
}

int main(void) {
  printf("nucsearch %s\n", ns_version());
  test_model();
  test_pruning();
  test_search();
  test_oracle();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  puts("all C API checks passed");
  return 0;
}

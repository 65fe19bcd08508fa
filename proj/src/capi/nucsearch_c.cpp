// Copyright 2026 The nucsearch Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nucsearch/nucsearch.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "nucsearch/error.hpp"
#include "nucsearch/harness.hpp"
#include "nucsearch/model_io.hpp"
#include "nucsearch/ngram_model.hpp"
#include "nucsearch/pruning.hpp"
#include "nucsearch/random_model.hpp"
#include "nucsearch/rerank.hpp"
#include "nucsearch/search.hpp"

struct ns_model {
  std::shared_ptr<const nucsearch::ScoringModel> impl;
};

struct ns_config {
  nucsearch::SearchConfig impl;
};

struct ns_result {
  nucsearch::SearchResult impl;
  std::vector<double> norm_scores;  // filled by rerank
};

namespace {

using nucsearch::Error;
using nucsearch::ErrorCode;

thread_local std::string g_last_error;

ns_status fail(ns_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

ns_status invalid(const char* what) { return fail(NS_ERR_INVALID_ARGUMENT, what); }

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
ns_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return NS_OK;
  } catch (const Error& e) {
    return fail(static_cast<ns_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NS_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string_view context_of(const char* context) {
  return context ? std::string_view(context) : std::string_view();
}

}  // namespace

extern "C" {

NS_API const char* ns_version(void) { return "0.1.0"; }

NS_API const char* ns_status_name(ns_status status) {
  if (status == NS_OK) return "Ok";
  return nucsearch::error_code_name(static_cast<ErrorCode>(status));
}

NS_API const char* ns_last_error(void) { return g_last_error.c_str(); }

NS_API void ns_string_free(char* s) { std::free(s); }

// ---- Models ----------------------------------------------------------------

NS_API ns_status ns_model_load(const char* path, ns_model** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] { *out = new ns_model{nucsearch::load_model(path)}; });
}

NS_API ns_status ns_model_parse(const char* json, size_t len, ns_model** out) {
  if (!json || !out) return invalid("null argument");
  return guarded([&] {
    *out = new ns_model{nucsearch::parse_model(std::string_view(json, len))};
  });
}

NS_API ns_status ns_model_train_ngram(const char* corpus, size_t len, int order,
                                      double add_k, ns_model** out) {
  if (!corpus || !out) return invalid("null argument");
  return guarded([&] {
    auto model = std::make_shared<nucsearch::NGramModel>(
        nucsearch::train_ngram(std::string_view(corpus, len), order, add_k));
    *out = new ns_model{std::move(model)};
  });
}

NS_API ns_status ns_model_random(uint64_t seed, size_t vocab_size, size_t max_prefix_len,
                                 double concentration, ns_model** out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    nucsearch::RandomModelSpec spec{seed, vocab_size, max_prefix_len, concentration};
    *out = new ns_model{
        std::make_shared<nucsearch::TableModel>(nucsearch::random_model(spec))};
  });
}

NS_API ns_status ns_model_save(const ns_model* model, const char* path) {
  if (!model || !path) return invalid("null argument");
  return guarded([&] { nucsearch::save_model(*model->impl, path); });
}

NS_API void ns_model_free(ns_model* model) { delete model; }

NS_API size_t ns_model_vocab_size(const ns_model* model) {
  return model ? model->impl->vocabulary().size() : 0;
}

NS_API int32_t ns_model_eos_id(const ns_model* model) {
  return model ? model->impl->vocabulary().eos_id() : -1;
}

NS_API const char* ns_model_token(const ns_model* model, int32_t id) {
  if (!model || !model->impl->vocabulary().contains(id)) return nullptr;
  return model->impl->vocabulary().token(id).c_str();
}

NS_API ns_status ns_model_token_id(const ns_model* model, const char* token, int32_t* out) {
  if (!model || !token || !out) return invalid("null argument");
  auto id = model->impl->vocabulary().find(token);
  if (!id) return fail(NS_ERR_INVALID_TOKEN_ID, std::string("unknown token '") + token + "'");
  *out = *id;
  return NS_OK;
}

NS_API ns_status ns_model_next_distribution(const ns_model* model, const char* context,
                                            const int32_t* prefix, size_t prefix_len,
                                            double* probs_out, size_t probs_len) {
  if (!model || !probs_out || (prefix_len && !prefix)) return invalid("null argument");
  return guarded([&] {
    const auto dist = model->impl->next_distribution(context_of(context),
                                                     std::span(prefix, prefix_len));
    if (probs_len < dist.size()) {
      throw Error(ErrorCode::kInvalidArgument, "output buffer too small");
    }
    std::copy(dist.probs().begin(), dist.probs().end(), probs_out);
  });
}

NS_API ns_status ns_model_score_sequence(const ns_model* model, const char* context,
                                         const int32_t* tokens, size_t len, double* out) {
  if (!model || !out || (len && !tokens)) return invalid("null argument");
  return guarded([&] {
    *out = nucsearch::score_sequence(*model->impl, context_of(context),
                                     std::span(tokens, len));
  });
}

// ---- Tail pruning ----------------------------------------------------------

NS_API ns_status ns_nucleus(const double* probs, size_t n, double p, int32_t* ids_out,
                            size_t* count_out, double* mass_out) {
  if (!probs || !ids_out || !count_out) return invalid("null argument");
  return guarded([&] {
    auto dist = nucsearch::Distribution::from_probs(std::vector<double>(probs, probs + n));
    const auto nucleus = nucsearch::nucleus_set(dist, p);
    std::copy(nucleus.token_ids.begin(), nucleus.token_ids.end(), ids_out);
    *count_out = nucleus.token_ids.size();
    if (mass_out) *mass_out = nucleus.mass;
  });
}

NS_API ns_status ns_tail_prune(const double* probs, size_t n, double p, double* out) {
  if (!probs || !out) return invalid("null argument");
  return guarded([&] {
    auto dist = nucsearch::Distribution::from_probs(std::vector<double>(probs, probs + n));
    const auto pruned = nucsearch::tail_prune(dist, p);
    std::copy(pruned.distribution.probs().begin(), pruned.distribution.probs().end(), out);
  });
}

// ---- Search configuration --------------------------------------------------

NS_API ns_status ns_config_create(ns_algorithm algorithm, ns_config** out) {
  if (!out) return invalid("null argument");
  nucsearch::SearchConfig c;
  switch (algorithm) {
    case NS_ALGO_BEAM: c.algorithm = nucsearch::Algorithm::kBeam; break;
    case NS_ALGO_P_EXACT: c.algorithm = nucsearch::Algorithm::kPExact; break;
    case NS_ALGO_DYNAMIC: c.algorithm = nucsearch::Algorithm::kDynamic; break;
    default: return invalid("unknown algorithm");
  }
  return guarded([&] { *out = new ns_config{c}; });
}

NS_API void ns_config_free(ns_config* config) { delete config; }

NS_API ns_status ns_config_set_k(ns_config* config, size_t k) {
  if (!config) return invalid("null argument");
  if (k < 1) return invalid("k must be >= 1");
  config->impl.k = k;
  return NS_OK;
}

NS_API ns_status ns_config_set_p(ns_config* config, double p) {
  if (!config) return invalid("null argument");
  return guarded([&] {
    nucsearch::check_threshold(p);
    config->impl.p = p;
  });
}

NS_API ns_status ns_config_set_candidate_cap(ns_config* config, size_t cap) {
  if (!config) return invalid("null argument");
  if (cap < 1) return invalid("candidate cap must be >= 1");
  config->impl.candidate_cap = cap;
  return NS_OK;
}

NS_API ns_status ns_config_set_k_cap(ns_config* config, size_t k_cap) {
  if (!config) return invalid("null argument");
  if (k_cap == 0) {
    config->impl.k_cap.reset();
  } else {
    config->impl.k_cap = k_cap;
  }
  return NS_OK;
}

NS_API ns_status ns_config_set_max_steps(ns_config* config, size_t max_steps) {
  if (!config) return invalid("null argument");
  if (max_steps < 1) return invalid("max_steps must be >= 1");
  config->impl.max_steps = max_steps;
  return NS_OK;
}

NS_API ns_status ns_config_set_on_unfinished(ns_config* config, ns_on_unfinished mode) {
  if (!config) return invalid("null argument");
  switch (mode) {
    case NS_ON_UNFINISHED_ERROR:
      config->impl.on_unfinished = nucsearch::OnUnfinished::kError;
      return NS_OK;
    case NS_ON_UNFINISHED_RETURN_FLAGGED:
      config->impl.on_unfinished = nucsearch::OnUnfinished::kReturnFlagged;
      return NS_OK;
  }
  return invalid("unknown on_unfinished mode");
}

NS_API ns_status ns_config_set_scoring(ns_config* config, ns_scoring scoring) {
  if (!config) return invalid("null argument");
  switch (scoring) {
    case NS_SCORING_ORIGINAL:
      config->impl.scoring = nucsearch::Scoring::kOriginal;
      return NS_OK;
    case NS_SCORING_RENORMALIZED:
      config->impl.scoring = nucsearch::Scoring::kRenormalized;
      return NS_OK;
  }
  return invalid("unknown scoring mode");
}

NS_API ns_status ns_config_set_trace(ns_config* config, int enabled) {
  if (!config) return invalid("null argument");
  config->impl.record_trace = enabled != 0;
  return NS_OK;
}

NS_API ns_status ns_config_validate(const ns_config* config) {
  if (!config) return invalid("null argument");
  return guarded([&] { config->impl.validate(); });
}

NS_API ns_status ns_config_params_json(const ns_config* config, char** out) {
  if (!config || !out) return invalid("null argument");
  return guarded([&] { *out = dup_string(nucsearch::harness::params_json(config->impl)); });
}

// ---- Search ----------------------------------------------------------------

NS_API ns_status ns_search(const ns_model* model, const char* context,
                           const ns_config* config, ns_result** out) {
  if (!model || !config || !out) return invalid("null argument");
  return guarded([&] {
    auto result = std::make_unique<ns_result>();
    result->impl = nucsearch::search(*model->impl, context_of(context), config->impl);
    *out = result.release();
  });
}

NS_API ns_status ns_result_rerank(const ns_result* result, ns_result** out) {
  if (!result || !out) return invalid("null argument");
  return guarded([&] {
    if (result->impl.unfinished_flag) {
      throw Error(ErrorCode::kUnfinishedHypothesis, "cannot rerank an unfinished result");
    }
    auto reranked = nucsearch::rerank(result->impl);
    auto next = std::make_unique<ns_result>();
    next->impl.hypotheses = std::move(reranked.hypotheses);
    next->impl.trace = result->impl.trace;
    next->norm_scores = std::move(reranked.scores);
    *out = next.release();
  });
}

NS_API void ns_result_free(ns_result* result) { delete result; }

NS_API size_t ns_result_count(const ns_result* result) {
  return result ? result->impl.hypotheses.size() : 0;
}

NS_API int ns_result_unfinished(const ns_result* result) {
  return result && result->impl.unfinished_flag ? 1 : 0;
}

NS_API ns_status ns_result_hypothesis(const ns_result* result, size_t index,
                                      const int32_t** tokens, size_t* len, double* logprob) {
  if (!result) return invalid("null argument");
  if (index >= result->impl.hypotheses.size()) return invalid("index out of range");
  const auto& h = result->impl.hypotheses[index];
  if (tokens) *tokens = h.tokens.data();
  if (len) *len = h.tokens.size();
  if (logprob) *logprob = h.cum_logprob;
  return NS_OK;
}

NS_API ns_status ns_result_norm_score(const ns_result* result, size_t index, double* out) {
  if (!result || !out) return invalid("null argument");
  if (result->norm_scores.empty()) return invalid("result was not reranked");
  if (index >= result->norm_scores.size()) return invalid("index out of range");
  *out = result->norm_scores[index];
  return NS_OK;
}

NS_API ns_status ns_result_rank_history(const ns_result* result, size_t index,
                                        const uint32_t** ranks, size_t* len) {
  if (!result || !ranks || !len) return invalid("null argument");
  if (index >= result->impl.hypotheses.size()) return invalid("index out of range");
  const auto& h = result->impl.hypotheses[index];
  *ranks = h.rank_history.data();
  *len = h.rank_history.size();
  return NS_OK;
}

NS_API size_t ns_result_trace_length(const ns_result* result) {
  return result ? result->impl.trace.size() : 0;
}

NS_API ns_status ns_result_trace_step(const ns_result* result, size_t step,
                                      size_t* pool_size, size_t* width,
                                      double* nucleus_mass) {
  if (!result) return invalid("null argument");
  if (step >= result->impl.trace.size()) return invalid("step out of range");
  const auto& ts = result->impl.trace[step];
  if (pool_size) *pool_size = ts.pool_size;
  if (width) *width = ts.width;
  if (nucleus_mass) {
    *nucleus_mass = ts.nucleus_mass ? *ts.nucleus_mass
                                    : std::numeric_limits<double>::quiet_NaN();
  }
  return NS_OK;
}

// ---- Batch harness ---------------------------------------------------------

NS_API ns_status ns_decode_file(const ns_model* model, const ns_config* config,
                                const char* input_path, const char* output_path,
                                const ns_decode_options* options,
                                ns_batch_summary* summary) {
  if (!model || !config || !input_path || !output_path) return invalid("null argument");
  return guarded([&] {
    nucsearch::harness::DecodeOptions opts;
    opts.config = config->impl;
    if (options) {
      opts.trace = options->trace != 0;
      opts.rerank = options->rerank != 0;
      opts.jobs = options->jobs;
    }
    const auto report =
        nucsearch::harness::decode_file(*model->impl, input_path, output_path, opts);
    if (summary) {
      summary->succeeded = report.succeeded;
      summary->unfinished = report.unfinished;
      summary->data_failures = report.data_failures;
      summary->search_failures = report.search_failures;
      summary->exit_code = report.exit_code();
    }
  });
}

NS_API ns_status ns_sweep(const ns_model* model, const char* grid_path,
                          const char* input_path, const char* output_dir, size_t jobs,
                          char** summary_json) {
  if (!model || !grid_path || !input_path || !output_dir) return invalid("null argument");
  return guarded([&] {
    namespace h = nucsearch::harness;
    const auto cells = h::parse_grid(h::read_text_file(grid_path));
    const auto instances = h::read_instances(input_path);
    const auto summaries = h::run_sweep(*model->impl, cells, instances, output_dir, jobs);
    if (summary_json) {
      nlohmann::json doc = nlohmann::json::array();
      for (const auto& s : summaries) {
        doc.push_back({{"cell", s.name},
                       {"instances", s.instances},
                       {"succeeded", s.succeeded},
                       {"unfinished", s.unfinished},
                       {"failures", s.failures},
                       {"mean_logprob", s.mean_logprob},
                       {"mean_length", s.mean_length}});
      }
      *summary_json = dup_string(doc.dump());
    }
  });
}

NS_API void ns_oracle_options_default(ns_oracle_options* options) {
  if (!options) return;
  static constexpr double kDefaultPs[] = {0.3, 0.5, 0.7, 0.9};
  const nucsearch::harness::OracleCheckOptions d;
  options->models = d.models;
  options->base_seed = d.base_seed;
  options->min_vocab = d.min_vocab;
  options->max_vocab = d.max_vocab;
  options->max_prefix_len = d.max_prefix_len;
  options->concentration = d.concentration;
  options->ps = kDefaultPs;
  options->num_ps = 4;
  options->check_original = 1;
  options->check_renormalized = 1;
  options->candidate_cap = d.candidate_cap;
  options->tolerance = d.tolerance;
}

NS_API ns_status ns_oracle_check(const ns_oracle_options* options, const ns_model* model,
                                 const char* context, size_t max_len, char** report_json,
                                 int* passed) {
  if (!options) return invalid("null argument");
  if (options->num_ps && !options->ps) return invalid("null p list");
  return guarded([&] {
    nucsearch::harness::OracleCheckOptions opts;
    opts.models = options->models;
    opts.base_seed = options->base_seed;
    opts.min_vocab = options->min_vocab;
    opts.max_vocab = options->max_vocab;
    opts.max_prefix_len = options->max_prefix_len;
    opts.concentration = options->concentration;
    opts.ps.assign(options->ps, options->ps + options->num_ps);
    for (double p : opts.ps) nucsearch::check_threshold(p);
    opts.scorings.clear();
    if (options->check_original) opts.scorings.push_back(nucsearch::Scoring::kOriginal);
    if (options->check_renormalized) {
      opts.scorings.push_back(nucsearch::Scoring::kRenormalized);
    }
    if (opts.ps.empty() || opts.scorings.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "nothing to check");
    }
    if (options->candidate_cap < 1) {
      throw Error(ErrorCode::kInvalidArgument, "candidate cap must be >= 1");
    }
    opts.candidate_cap = options->candidate_cap;
    opts.tolerance = options->tolerance;

    nucsearch::harness::OracleCheckReport report;
    if (model) {
      if (max_len < 1) throw Error(ErrorCode::kInvalidArgument, "max_len must be >= 1");
      nucsearch::harness::check_model_against_oracle(*model->impl, context_of(context),
                                                     "model", max_len, opts, report);
    } else {
      report = nucsearch::harness::run_oracle_check(opts);
    }
    if (report_json) *report_json = dup_string(report.to_json());
    if (passed) *passed = report.passed() ? 1 : 0;
  });
}

NS_API ns_status ns_analyze_ranks_file(const char* decode_output_path, uint32_t threshold,
                                       char** report_json) {
  if (!decode_output_path || !report_json) return invalid("null argument");
  return guarded([&] {
    const auto report = nucsearch::harness::analyze_ranks_file(decode_output_path, threshold);
    *report_json = dup_string(report.to_json());
  });
}

}  // extern "C"

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

#include "nucsearch/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "nucsearch/error.hpp"
#include "nucsearch/pruning.hpp"

namespace nucsearch {

const char* algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::kBeam: return "beam";
    case Algorithm::kPExact: return "p_exact";
    case Algorithm::kDynamic: return "dynamic";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  if (name == "beam") return Algorithm::kBeam;
  if (name == "p_exact" || name == "p-exact") return Algorithm::kPExact;
  if (name == "dynamic") return Algorithm::kDynamic;
  return std::nullopt;
}

const char* scoring_name(Scoring s) noexcept {
  return s == Scoring::kOriginal ? "original" : "renormalized";
}

std::optional<Scoring> parse_scoring(std::string_view name) noexcept {
  if (name == "original") return Scoring::kOriginal;
  if (name == "renormalized") return Scoring::kRenormalized;
  return std::nullopt;
}

const char* on_unfinished_name(OnUnfinished o) noexcept {
  return o == OnUnfinished::kError ? "error" : "return_flagged";
}

std::optional<OnUnfinished> parse_on_unfinished(std::string_view name) noexcept {
  if (name == "error") return OnUnfinished::kError;
  if (name == "return_flagged") return OnUnfinished::kReturnFlagged;
  return std::nullopt;
}

bool precedes(const Hypothesis& a, const Hypothesis& b) noexcept {
  if (a.cum_logprob != b.cum_logprob) return a.cum_logprob > b.cum_logprob;
  if (a.tokens.size() != b.tokens.size()) return a.tokens.size() < b.tokens.size();
  return std::lexicographical_compare(a.tokens.begin(), a.tokens.end(),
                                      b.tokens.begin(), b.tokens.end());
}

void SearchConfig::validate() const {
  if (algorithm == Algorithm::kBeam && k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "beam size k must be >= 1");
  }
  if (algorithm != Algorithm::kBeam) check_threshold(p);
  if (candidate_cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "candidate_cap must be >= 1");
  }
  if (k_cap && *k_cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k_cap must be >= 1");
  }
  if (max_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_steps must be >= 1");
  }
}

std::size_t SearchConfig::live_limit() const noexcept {
  return k_cap ? std::min(candidate_cap, *k_cap) : candidate_cap;
}

const Hypothesis& SearchResult::best() const {
  if (hypotheses.empty()) throw Error(ErrorCode::kEmptyResult, "search result is empty");
  return hypotheses.front();
}

namespace {

// Every single-token extension of each live prefix (zero-probability tokens
// excluded) plus each finished hypothesis as one candidate, in precedes()
// order.
std::vector<Hypothesis> build_pool(const ScoringModel& model, std::string_view context,
                                   const std::vector<Hypothesis>& beam) {
  const TokenId eos = model.vocabulary().eos_id();
  std::vector<Hypothesis> pool;
  for (const Hypothesis& h : beam) {
    if (h.finished) {
      pool.push_back(h);
      continue;
    }
    const Distribution dist = model.next_distribution(context, h.tokens);
    for (std::size_t y = 0; y < dist.size(); ++y) {
      if (!(dist.probs()[y] > 0.0)) continue;
      Hypothesis child;
      child.tokens.reserve(h.tokens.size() + 1);
      child.tokens = h.tokens;
      child.tokens.push_back(static_cast<TokenId>(y));
      child.cum_logprob = h.cum_logprob + dist.log_probs()[y];
      child.finished = static_cast<TokenId>(y) == eos;
      child.rank_history = h.rank_history;
      pool.push_back(std::move(child));
    }
  }
  std::sort(pool.begin(), pool.end(), precedes);
  return pool;
}

struct Selection {
  std::size_t width = 0;
  std::optional<double> nucleus_mass;
};

using Selector = std::function<Selection(const std::vector<Hypothesis>& pool)>;

// Shared step loop of beam and dynamic beam search.
SearchResult run_synchronous(const ScoringModel& model, std::string_view context,
                             const SearchConfig& config, const Selector& select) {
  config.validate();
  SearchResult result;
  std::vector<Hypothesis> beam(1);  // the empty prefix

  for (std::size_t step = 1; step <= config.max_steps; ++step) {
    std::vector<Hypothesis> pool = build_pool(model, context, beam);
    const Selection sel = select(pool);
    const std::size_t width = std::min(sel.width, pool.size());

    beam.clear();
    beam.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
      pool[i].rank_history.push_back(static_cast<std::uint32_t>(i + 1));
      beam.push_back(std::move(pool[i]));
    }
    if (config.record_trace) {
      TraceStep ts;
      ts.pool_size = pool.size();
      ts.width = width;
      ts.selected_ranks.resize(width);
      for (std::size_t i = 0; i < width; ++i) {
        ts.selected_ranks[i] = static_cast<std::uint32_t>(i + 1);
      }
      ts.nucleus_mass = sel.nucleus_mass;
      result.trace.push_back(std::move(ts));
    }
    if (std::all_of(beam.begin(), beam.end(),
                    [](const Hypothesis& h) { return h.finished; })) {
      break;
    }
  }

  for (Hypothesis& h : beam) {
    if (h.finished) result.hypotheses.push_back(std::move(h));
  }
  if (result.hypotheses.empty()) {
    if (config.on_unfinished == OnUnfinished::kError || beam.empty()) {
      throw Error(ErrorCode::kNoFinishedHypothesis,
                  "no finished hypothesis within " + std::to_string(config.max_steps) +
                      " steps");
    }
    result.hypotheses.push_back(std::move(beam.front()));
    result.unfinished_flag = true;
  }
  return result;
}

double log_sum_exp(const std::vector<Hypothesis>& pool) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const Hypothesis& h : pool) hi = std::max(hi, h.cum_logprob);
  if (!std::isfinite(hi)) return hi;
  double sum = 0.0;
  for (const Hypothesis& h : pool) sum += std::exp(h.cum_logprob - hi);
  return hi + std::log(sum);
}

}  // namespace

SearchResult beam_search(const ScoringModel& model, std::string_view context,
                         const SearchConfig& config) {
  const std::size_t width = std::min(config.k, config.live_limit());
  return run_synchronous(model, context, config, [width](const std::vector<Hypothesis>&) {
    return Selection{width, std::nullopt};
  });
}

SearchResult dynamic_beam_search(const ScoringModel& model, std::string_view context,
                                 const SearchConfig& config) {
  const double p = config.p;
  const std::size_t limit = config.live_limit();
  return run_synchronous(
      model, context, config, [p, limit](const std::vector<Hypothesis>& pool) {
        // Normalized candidate probabilities; pool order is already
        // non-increasing in cum_logprob, hence in these values too.
        const double norm = log_sum_exp(pool);
        std::vector<double> normalized(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) {
          normalized[i] = std::exp(pool[i].cum_logprob - norm);
        }
        const std::size_t len = nucleus_length(normalized, p);
        double mass = 0.0;
        for (std::size_t i = 0; i < len; ++i) mass += normalized[i];
        return Selection{std::min(len, limit), mass};
      });
}

SearchResult search(const ScoringModel& model, std::string_view context,
                    const SearchConfig& config) {
  switch (config.algorithm) {
    case Algorithm::kBeam: return beam_search(model, context, config);
    case Algorithm::kPExact: return p_exact_search(model, context, config);
    case Algorithm::kDynamic: return dynamic_beam_search(model, context, config);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

}  // namespace nucsearch

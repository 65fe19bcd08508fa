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

#ifndef NUCSEARCH_SEARCH_HPP_
#define NUCSEARCH_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nucsearch/model.hpp"

namespace nucsearch {

enum class Algorithm { kBeam, kPExact, kDynamic };
enum class OnUnfinished { kError, kReturnFlagged };
// Per-step scores used by p-exact search: original log P, or log P_p of the
// tail-pruned distribution.
enum class Scoring { kOriginal, kRenormalized };

const char* algorithm_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;
const char* scoring_name(Scoring s) noexcept;
std::optional<Scoring> parse_scoring(std::string_view name) noexcept;
const char* on_unfinished_name(OnUnfinished o) noexcept;
std::optional<OnUnfinished> parse_on_unfinished(std::string_view name) noexcept;

struct Hypothesis {
  std::vector<TokenId> tokens;
  double cum_logprob = 0.0;
  bool finished = false;
  // 1-based rank held in the sorted candidate pool of every step survived.
  std::vector<std::uint32_t> rank_history;
};

// Global total order: higher cum_logprob, then shorter, then lexicographically
// smaller token ids. Token sequences are unique within any pool, so this is
// strict and total over a pool.
bool precedes(const Hypothesis& a, const Hypothesis& b) noexcept;

struct SearchConfig {
  Algorithm algorithm = Algorithm::kBeam;
  std::size_t k = 5;                    // beam only
  double p = 0.6;                       // p_exact and dynamic
  std::size_t candidate_cap = 320;      // hard bound on live prefixes
  std::optional<std::size_t> k_cap;     // optional bound on selected width
  std::size_t max_steps = 200;          // token budget, EOS included
  OnUnfinished on_unfinished = OnUnfinished::kError;
  Scoring scoring = Scoring::kOriginal;  // p_exact only
  bool record_trace = false;

  // Throws InvalidArgument / InvalidThreshold.
  void validate() const;
  // Effective bound on live prefixes: min(candidate_cap, k_cap).
  std::size_t live_limit() const noexcept;
};

struct TraceStep {
  std::size_t pool_size = 0;
  std::size_t width = 0;
  std::vector<std::uint32_t> selected_ranks;
  std::optional<double> nucleus_mass;
};

struct SearchResult {
  // Finished hypotheses in precedes() order. When unfinished_flag is set this
  // holds exactly one unfinished hypothesis instead.
  std::vector<Hypothesis> hypotheses;
  bool unfinished_flag = false;
  std::vector<TraceStep> trace;

  const Hypothesis& best() const;
};

// Fixed-width beam search: each step keeps the top min(k, cap) candidates of
// the pool (all single-token extensions of live prefixes plus retained
// finished hypotheses). Stops when every kept candidate is finished or after
// max_steps.
SearchResult beam_search(const ScoringModel& model, std::string_view context,
                         const SearchConfig& config);

// Best-first search over sequences whose every token lies in the top-p
// nucleus of its step. The frontier is trimmed to live_limit() after each
// expansion; when it never trims, the first finished pop is the optimum.
SearchResult p_exact_search(const ScoringModel& model, std::string_view context,
                            const SearchConfig& config);

// Beam search whose width at each step is the nucleus size of the pool's
// normalized probabilities, bounded by live_limit(). Kept hypotheses retain
// their unnormalized cumulative scores.
SearchResult dynamic_beam_search(const ScoringModel& model, std::string_view context,
                                 const SearchConfig& config);

// Dispatches on config.algorithm.
SearchResult search(const ScoringModel& model, std::string_view context,
                    const SearchConfig& config);

struct RankedOutput {
  std::string id;
  std::optional<std::vector<std::uint32_t>> rank_history;
};

struct RankPartition {
  struct Entry {
    std::string id;
    std::uint32_t max_rank = 0;
    bool exceeds = false;
  };
  std::uint32_t threshold = 0;
  std::size_t within_count = 0;   // max rank <= threshold
  std::size_t exceeds_count = 0;  // some prefix ranked worse than threshold
  std::vector<Entry> entries;     // input order
};

// Throws MissingTrace for an entry without a rank history.
RankPartition analyze_max_rank(std::span<const RankedOutput> outputs,
                               std::uint32_t threshold);

}  // namespace nucsearch

#endif  // NUCSEARCH_SEARCH_HPP_

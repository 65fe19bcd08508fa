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

#ifndef NUCSEARCH_ORACLE_HPP_
#define NUCSEARCH_ORACLE_HPP_

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nucsearch/model.hpp"
#include "nucsearch/search.hpp"

// Brute-force references for tests and acceptance runs. Nothing here shares
// code with the search algorithms beyond the model and pruning primitives.
namespace nucsearch::oracle {

// Upper bound on the number of enumerated sequences.
inline constexpr double kMaxSequences = 1e7;

struct EnumeratedSequence {
  std::vector<TokenId> tokens;  // ends in EOS
  double cum_logprob = 0.0;     // score_sequence() value
  std::map<double, bool> feasible_under_p;
};

struct Enumeration {
  std::vector<EnumeratedSequence> sequences;
  // Probability of the length-max_len prefixes without EOS; together with the
  // sequences this accounts for all probability mass.
  double unfinished_mass = 0.0;
};

// Every sequence of at most max_len-1 non-EOS tokens followed by EOS, with
// nucleus feasibility recorded for each probe threshold. Throws SpaceTooLarge
// past kMaxSequences.
Enumeration enumerate_sequences(const ScoringModel& model, std::string_view context,
                                std::size_t max_len,
                                std::span<const double> probe_ps = {});

// Sum of log P_p(y_t | Y_<t) using tail_prune() at every step; -inf when a
// token falls outside its step's nucleus.
double score_sequence_pruned(const ScoringModel& model, std::string_view context,
                             std::span<const TokenId> tokens, double p);

// Argmax over enumerated sequences (global tie-break). With p set, only
// sequences feasible under p compete and `scoring` selects original or
// renormalized per-step scores; the returned cum_logprob is that score.
// Returns nullopt when nothing is feasible.
std::optional<EnumeratedSequence> exhaustive_best(const ScoringModel& model,
                                                  std::string_view context,
                                                  std::optional<double> p,
                                                  std::size_t max_len,
                                                  Scoring scoring = Scoring::kOriginal);

// Argmax token (ties to the lower id) at every step until EOS or max_steps.
Hypothesis greedy_decode(const ScoringModel& model, std::string_view context,
                         std::size_t max_steps);

}  // namespace nucsearch::oracle

#endif  // NUCSEARCH_ORACLE_HPP_

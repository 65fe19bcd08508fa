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

#include "nucsearch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nucsearch/error.hpp"
#include "nucsearch/pruning.hpp"

namespace nucsearch::oracle {

namespace {

struct Walker {
  const ScoringModel& model;
  std::string_view context;
  std::size_t max_len;
  std::span<const double> probe_ps;
  Enumeration out;

  // `feasible[i]` tracks whether every token of `prefix` lies in its step's
  // nucleus at probe_ps[i].
  void visit(std::vector<TokenId>& prefix, double prefix_prob,
             const std::vector<bool>& feasible) {
    const TokenId eos = model.vocabulary().eos_id();
    const Distribution dist = model.next_distribution(context, prefix);
    std::vector<std::vector<TokenId>> nuclei;
    nuclei.reserve(probe_ps.size());
    for (double p : probe_ps) nuclei.push_back(nucleus_set(dist, p).token_ids);

    auto member = [&](std::size_t i, TokenId y) {
      return std::find(nuclei[i].begin(), nuclei[i].end(), y) != nuclei[i].end();
    };

    for (std::size_t y = 0; y < dist.size(); ++y) {
      const TokenId tok = static_cast<TokenId>(y);
      std::vector<bool> child_feasible(feasible.size());
      for (std::size_t i = 0; i < feasible.size(); ++i) {
        child_feasible[i] = feasible[i] && member(i, tok);
      }
      prefix.push_back(tok);
      if (tok == eos) {
        EnumeratedSequence seq;
        seq.tokens = prefix;
        seq.cum_logprob = score_sequence(model, context, seq.tokens);
        for (std::size_t i = 0; i < probe_ps.size(); ++i) {
          seq.feasible_under_p[probe_ps[i]] = child_feasible[i];
        }
        out.sequences.push_back(std::move(seq));
      } else if (prefix.size() == max_len) {
        out.unfinished_mass += prefix_prob * dist.probs()[y];
      } else {
        visit(prefix, prefix_prob * dist.probs()[y], child_feasible);
      }
      prefix.pop_back();
    }
  }
};

bool better(double score_a, const std::vector<TokenId>& a, double score_b,
            const std::vector<TokenId>& b) {
  if (score_a != score_b) return score_a > score_b;
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

Enumeration enumerate_sequences(const ScoringModel& model, std::string_view context,
                                std::size_t max_len, std::span<const double> probe_ps) {
  if (max_len < 1) throw Error(ErrorCode::kInvalidArgument, "max_len must be >= 1");
  for (double p : probe_ps) check_threshold(p);

  const double branching = static_cast<double>(model.vocabulary().size() - 1);
  double count = 0.0;
  double level = 1.0;
  for (std::size_t l = 0; l < max_len; ++l) {
    count += level;
    level *= branching;
    if (count > kMaxSequences) {
      throw Error(ErrorCode::kSpaceTooLarge,
                  "enumeration would exceed " + std::to_string(kMaxSequences) +
                      " sequences");
    }
  }

  Walker walker{model, context, max_len, probe_ps, {}};
  std::vector<TokenId> prefix;
  walker.visit(prefix, 1.0, std::vector<bool>(probe_ps.size(), true));
  return std::move(walker.out);
}

double score_sequence_pruned(const ScoringModel& model, std::string_view context,
                             std::span<const TokenId> tokens, double p) {
  double total = 0.0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const Distribution dist = model.next_distribution(context, tokens.first(t));
    const double lp = tail_prune(dist, p).distribution.log_prob(tokens[t]);
    if (lp == -std::numeric_limits<double>::infinity()) return lp;
    total += lp;
  }
  return total;
}

std::optional<EnumeratedSequence> exhaustive_best(const ScoringModel& model,
                                                  std::string_view context,
                                                  std::optional<double> p,
                                                  std::size_t max_len, Scoring scoring) {
  std::vector<double> probes;
  if (p) probes.push_back(*p);
  Enumeration all = enumerate_sequences(model, context, max_len, probes);

  std::optional<EnumeratedSequence> best;
  for (EnumeratedSequence& seq : all.sequences) {
    if (p && !seq.feasible_under_p.at(*p)) continue;
    if (p && scoring == Scoring::kRenormalized) {
      seq.cum_logprob = score_sequence_pruned(model, context, seq.tokens, *p);
    }
    if (!best || better(seq.cum_logprob, seq.tokens, best->cum_logprob, best->tokens)) {
      best = std::move(seq);
    }
  }
  return best;
}

Hypothesis greedy_decode(const ScoringModel& model, std::string_view context,
                         std::size_t max_steps) {
  const TokenId eos = model.vocabulary().eos_id();
  Hypothesis h;
  while (h.tokens.size() < max_steps && !h.finished) {
    const Distribution dist = model.next_distribution(context, h.tokens);
    const auto probs = dist.probs();
    const auto arg = static_cast<TokenId>(std::max_element(probs.begin(), probs.end()) -
                                          probs.begin());
    h.tokens.push_back(arg);
    h.cum_logprob += dist.log_prob(arg);
    h.finished = arg == eos;
  }
  return h;
}

}  // namespace nucsearch::oracle

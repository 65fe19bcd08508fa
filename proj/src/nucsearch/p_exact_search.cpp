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

#include <iterator>
#include <set>

#include "nucsearch/error.hpp"
#include "nucsearch/pruning.hpp"
#include "nucsearch/search.hpp"

namespace nucsearch {

namespace {

struct Precedes {
  bool operator()(const Hypothesis& a, const Hypothesis& b) const noexcept {
    return precedes(a, b);
  }
};

}  // namespace

// Costs -log P are non-negative per step (under either scoring), so scores only
// fall along an extension path and the first finished hypothesis popped off
// the frontier beats everything still on it.
SearchResult p_exact_search(const ScoringModel& model, std::string_view context,
                            const SearchConfig& config) {
  config.validate();
  const TokenId eos = model.vocabulary().eos_id();
  const std::size_t limit = config.live_limit();

  SearchResult result;
  std::set<Hypothesis, Precedes> frontier;
  frontier.insert(Hypothesis{});
  std::optional<Hypothesis> dead_end;

  while (!frontier.empty()) {
    Hypothesis node = std::move(frontier.extract(frontier.begin()).value());

    if (node.finished) {
      result.hypotheses.push_back(std::move(node));
      for (const Hypothesis& h : frontier) {
        if (h.finished) result.hypotheses.push_back(h);
      }
      return result;
    }
    if (node.tokens.size() >= config.max_steps) {
      // Budget exhausted; pops arrive in precedes() order so the first one
      // is the best unfinished hypothesis.
      if (!dead_end) dead_end = std::move(node);
      continue;
    }

    const Distribution dist = model.next_distribution(context, node.tokens);
    const PrunedDistribution pruned = tail_prune(dist, config.p);
    const auto& members = pruned.nucleus.token_ids;
    for (std::size_t r = 0; r < members.size(); ++r) {
      const TokenId y = members[r];
      Hypothesis child;
      child.tokens.reserve(node.tokens.size() + 1);
      child.tokens = node.tokens;
      child.tokens.push_back(y);
      child.cum_logprob = node.cum_logprob + (config.scoring == Scoring::kOriginal
                                                  ? dist.log_prob(y)
                                                  : pruned.distribution.log_prob(y));
      child.finished = y == eos;
      child.rank_history = node.rank_history;
      child.rank_history.push_back(static_cast<std::uint32_t>(r + 1));
      frontier.insert(std::move(child));
    }

    const std::size_t pool_size = frontier.size();
    while (frontier.size() > limit) frontier.erase(std::prev(frontier.end()));
    if (config.record_trace) {
      TraceStep ts;
      ts.pool_size = pool_size;
      ts.width = frontier.size();
      ts.nucleus_mass = pruned.nucleus.mass;
      result.trace.push_back(std::move(ts));
    }
  }

  if (config.on_unfinished == OnUnfinished::kError || !dead_end) {
    throw Error(ErrorCode::kNoFinishedHypothesis,
                "every reachable </s> was pruned within " +
                    std::to_string(config.max_steps) + " steps");
  }
  result.hypotheses.push_back(std::move(*dead_end));
  result.unfinished_flag = true;
  return result;
}

}  // namespace nucsearch

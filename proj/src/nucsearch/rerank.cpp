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

#include "nucsearch/rerank.hpp"

#include <algorithm>
#include <numeric>

#include "nucsearch/error.hpp"

namespace nucsearch {

double length_normalized_score(const Hypothesis& hyp) {
  if (!hyp.finished || hyp.tokens.empty()) {
    throw Error(ErrorCode::kUnfinishedHypothesis,
                "length normalization needs a finished hypothesis");
  }
  return -hyp.cum_logprob / static_cast<double>(hyp.tokens.size());
}

RerankedResult rerank(const SearchResult& result) {
  if (result.hypotheses.empty()) {
    throw Error(ErrorCode::kEmptyResult, "nothing to rerank");
  }
  std::vector<double> scores;
  scores.reserve(result.hypotheses.size());
  for (const Hypothesis& h : result.hypotheses) {
    scores.push_back(length_normalized_score(h));
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return precedes(result.hypotheses[a], result.hypotheses[b]);
  });

  RerankedResult out;
  out.hypotheses.reserve(order.size());
  out.scores.reserve(order.size());
  for (std::size_t i : order) {
    out.hypotheses.push_back(result.hypotheses[i]);
    out.scores.push_back(scores[i]);
  }
  return out;
}

}  // namespace nucsearch

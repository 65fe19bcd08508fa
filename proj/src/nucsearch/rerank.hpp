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

#ifndef NUCSEARCH_RERANK_HPP_
#define NUCSEARCH_RERANK_HPP_

#include <vector>

#include "nucsearch/search.hpp"

namespace nucsearch {

// Average negative log-probability per token, EOS included:
//   (-cum_logprob) / tokens.size()
// Lower is better. Throws UnfinishedHypothesis.
double length_normalized_score(const Hypothesis& hyp);

struct RerankedResult {
  std::vector<Hypothesis> hypotheses;  // ascending normalized score
  std::vector<double> scores;          // aligned with hypotheses
};

// Throws EmptyResult for an empty result and UnfinishedHypothesis when the
// result carries a flagged unfinished hypothesis.
RerankedResult rerank(const SearchResult& result);

}  // namespace nucsearch

#endif  // NUCSEARCH_RERANK_HPP_

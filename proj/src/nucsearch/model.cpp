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

#include "nucsearch/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nucsearch/error.hpp"

namespace nucsearch {

Distribution ScoringModel::next_distribution(std::string_view context,
                                             std::span<const TokenId> prefix) const {
  const Vocabulary& vocab = vocabulary();
  for (TokenId id : prefix) {
    if (!vocab.contains(id)) {
      throw Error(ErrorCode::kInvalidTokenId,
                  "token id " + std::to_string(id) + " out of range");
    }
    if (id == vocab.eos_id()) {
      throw Error(ErrorCode::kInvalidTokenId, "prefix contains </s>");
    }
  }
  return lookup(context, prefix);
}

double score_sequence(const ScoringModel& model, std::string_view context,
                      std::span<const TokenId> tokens) {
  const Vocabulary& vocab = model.vocabulary();
  if (tokens.empty()) {
    throw Error(ErrorCode::kMisplacedEos, "empty sequence has no </s>");
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!vocab.contains(tokens[i])) {
      throw Error(ErrorCode::kInvalidTokenId,
                  "token id " + std::to_string(tokens[i]) + " out of range");
    }
    const bool is_eos = tokens[i] == vocab.eos_id();
    if (is_eos != (i + 1 == tokens.size())) {
      throw Error(ErrorCode::kMisplacedEos,
                  "sequence must contain exactly one </s>, at the end");
    }
  }

  double total = 0.0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const Distribution dist = model.next_distribution(context, tokens.first(t));
    const double lp = dist.log_prob(tokens[t]);
    if (lp == -std::numeric_limits<double>::infinity()) return lp;
    total += lp;
  }
  return total;
}

}  // namespace nucsearch

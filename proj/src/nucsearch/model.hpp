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

#ifndef NUCSEARCH_MODEL_HPP_
#define NUCSEARCH_MODEL_HPP_

#include <span>
#include <string_view>

#include "nucsearch/distribution.hpp"
#include "nucsearch/vocabulary.hpp"

namespace nucsearch {

// Autoregressive scoring model P(y_t | Y_<t, X). Implementations are
// immutable after construction; next_distribution() is reentrant and
// deterministic, so one model may back many concurrent searches.
class ScoringModel {
 public:
  virtual ~ScoringModel() = default;

  virtual const Vocabulary& vocabulary() const noexcept = 0;

  // `context` is the source-context key; "" means unconditional. Throws
  // InvalidTokenId when the prefix holds an out-of-range id or EOS.
  Distribution next_distribution(std::string_view context,
                                 std::span<const TokenId> prefix) const;

 protected:
  virtual Distribution lookup(std::string_view context,
                              std::span<const TokenId> prefix) const = 0;
};

// Sum of per-step natural-log probabilities of a sequence that ends in EOS.
// Returns -inf as soon as a step has probability zero.
double score_sequence(const ScoringModel& model, std::string_view context,
                      std::span<const TokenId> tokens);

}  // namespace nucsearch

#endif  // NUCSEARCH_MODEL_HPP_

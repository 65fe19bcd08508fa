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

#ifndef NUCSEARCH_NGRAM_MODEL_HPP_
#define NUCSEARCH_NGRAM_MODEL_HPP_

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "nucsearch/model.hpp"

namespace nucsearch {

// Add-k smoothed n-gram model:
//   P(y | h) = (count(h, y) + add_k) / (count(h, .) + add_k * |V|)
// Histories are the last order-1 tokens of the prefix, left-padded with
// kBeginMarker. The marker never appears in the vocabulary. The model is
// unconditional; the context key is ignored.
class NGramModel final : public ScoringModel {
 public:
  static constexpr TokenId kBeginMarker = -1;
  // Spelling of kBeginMarker in serialized history keys.
  static constexpr std::string_view kBeginToken = "<s>";

  using History = std::vector<TokenId>;
  // history -> per-token counts aligned with the vocabulary.
  using Counts = std::map<History, std::vector<std::uint64_t>>;

  NGramModel(Vocabulary vocab, int order, double add_k, Counts counts);

  const Vocabulary& vocabulary() const noexcept override { return vocab_; }
  int order() const noexcept { return order_; }
  double add_k() const noexcept { return add_k_; }
  const Counts& counts() const noexcept { return counts_; }

  // Raw (unsmoothed) count of `token` after `history`.
  std::uint64_t count(const History& history, TokenId token) const;

  // History key the model uses after `prefix`.
  History history_for(std::span<const TokenId> prefix) const;

 protected:
  Distribution lookup(std::string_view context,
                      std::span<const TokenId> prefix) const override;

 private:
  Vocabulary vocab_;
  int order_;
  double add_k_;
  Counts counts_;
};

// Trains on newline-separated lines of whitespace-separated tokens. Every
// non-blank line ends with one implicit </s>. The vocabulary is the sorted
// set of distinct tokens followed by </s>.
NGramModel train_ngram(std::string_view corpus, int order, double add_k);

}  // namespace nucsearch

#endif  // NUCSEARCH_NGRAM_MODEL_HPP_

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

#ifndef NUCSEARCH_TABLE_MODEL_HPP_
#define NUCSEARCH_TABLE_MODEL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nucsearch/model.hpp"

namespace nucsearch {

// Explicit lookup table: (context key, prefix) -> Distribution. A prefix with
// no entry resolves to the fallback distribution if one was given, otherwise
// it is an UnknownContext error.
class TableModel final : public ScoringModel {
 public:
  using PrefixTable = std::map<std::vector<TokenId>, Distribution>;
  using Entries = std::map<std::string, PrefixTable, std::less<>>;

  TableModel(Vocabulary vocab, Entries entries,
             std::optional<Distribution> fallback = std::nullopt);

  const Vocabulary& vocabulary() const noexcept override { return vocab_; }
  const Entries& entries() const noexcept { return entries_; }
  const std::optional<Distribution>& fallback() const noexcept { return fallback_; }
  std::size_t entry_count() const noexcept;

 protected:
  Distribution lookup(std::string_view context,
                      std::span<const TokenId> prefix) const override;

 private:
  Vocabulary vocab_;
  Entries entries_;
  std::optional<Distribution> fallback_;
};

}  // namespace nucsearch

#endif  // NUCSEARCH_TABLE_MODEL_HPP_

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

#include "nucsearch/table_model.hpp"

#include "nucsearch/error.hpp"

namespace nucsearch {

TableModel::TableModel(Vocabulary vocab, Entries entries,
                       std::optional<Distribution> fallback)
    : vocab_(std::move(vocab)),
      entries_(std::move(entries)),
      fallback_(std::move(fallback)) {
  auto check_size = [&](const Distribution& d) {
    if (d.size() != vocab_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "distribution length " + std::to_string(d.size()) +
                      " does not match vocabulary size " +
                      std::to_string(vocab_.size()));
    }
  };
  if (fallback_) check_size(*fallback_);
  for (const auto& [context, table] : entries_) {
    for (const auto& [prefix, dist] : table) {
      check_size(dist);
      for (TokenId id : prefix) {
        if (!vocab_.contains(id) || id == vocab_.eos_id()) {
          throw Error(ErrorCode::kInvalidTokenId,
                      "table prefix for context '" + context +
                          "' holds an invalid token id");
        }
      }
    }
  }
}

std::size_t TableModel::entry_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [context, table] : entries_) n += table.size();
  return n;
}

Distribution TableModel::lookup(std::string_view context,
                                std::span<const TokenId> prefix) const {
  if (auto ctx = entries_.find(context); ctx != entries_.end()) {
    const std::vector<TokenId> key(prefix.begin(), prefix.end());
    if (auto it = ctx->second.find(key); it != ctx->second.end()) {
      return it->second;
    }
  }
  if (fallback_) return *fallback_;
  throw Error(ErrorCode::kUnknownContext,
              "no table entry for context '" + std::string(context) +
                  "' and prefix '" + vocab_.join(prefix) + "'");
}

}  // namespace nucsearch

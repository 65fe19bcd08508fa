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

#ifndef NUCSEARCH_VOCABULARY_HPP_
#define NUCSEARCH_VOCABULARY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nucsearch {

using TokenId = std::int32_t;

// Dense token inventory 0..size()-1 with exactly one reserved end-of-sequence
// token spelled "</s>".
class Vocabulary {
 public:
  static constexpr std::string_view kEos = "</s>";

  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  TokenId eos_id() const noexcept { return eos_id_; }
  bool contains(TokenId id) const noexcept {
    return id >= 0 && static_cast<std::size_t>(id) < tokens_.size();
  }

  const std::string& token(TokenId id) const;
  std::optional<TokenId> find(std::string_view token) const;
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  // Space-joined spelling of a token sequence.
  std::string join(std::span<const TokenId> ids) const;

  // Inverse of join(); empty input yields an empty sequence. Throws
  // InvalidTokenId for unknown tokens.
  std::vector<TokenId> split(std::string_view text) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  TokenId eos_id_ = -1;
};

}  // namespace nucsearch

#endif  // NUCSEARCH_VOCABULARY_HPP_

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

#include "nucsearch/vocabulary.hpp"

#include <limits>

#include "nucsearch/error.hpp"

namespace nucsearch {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kModelNotFound: return "ModelNotFound";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUnknownContext: return "UnknownContext";
    case ErrorCode::kInvalidTokenId: return "InvalidTokenId";
    case ErrorCode::kMisplacedEos: return "MisplacedEos";
    case ErrorCode::kInvalidThreshold: return "InvalidThreshold";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kNoFinishedHypothesis: return "NoFinishedHypothesis";
    case ErrorCode::kUnfinishedHypothesis: return "UnfinishedHypothesis";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kSpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::kMissingTrace: return "MissingTrace";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

Vocabulary::Vocabulary(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  if (tokens_.size() > static_cast<std::size_t>(std::numeric_limits<TokenId>::max())) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary too large");
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const std::string& tok = tokens_[i];
    if (tok.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty token string at index " + std::to_string(i));
    }
    if (tok.find_first_of(" \t\n\r") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "token contains whitespace: '" + tok + "'");
    }
    if (!index_.emplace(tok, static_cast<TokenId>(i)).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate token '" + tok + "'");
    }
  }
  auto eos = index_.find(std::string(kEos));
  if (eos == index_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary lacks the </s> token");
  }
  eos_id_ = eos->second;
}

const std::string& Vocabulary::token(TokenId id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::kInvalidTokenId,
                "token id " + std::to_string(id) + " out of range");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Vocabulary::join(std::span<const TokenId> ids) const {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back(' ');
    out += token(ids[i]);
  }
  return out;
}

std::vector<TokenId> Vocabulary::split(std::string_view text) const {
  std::vector<TokenId> ids;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = text.find_first_not_of(' ', pos);
    if (start == std::string_view::npos) break;
    std::size_t end = text.find(' ', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    auto id = find(tok);
    if (!id) {
      throw Error(ErrorCode::kInvalidTokenId,
                  "unknown token '" + std::string(tok) + "'");
    }
    ids.push_back(*id);
    pos = end;
  }
  return ids;
}

}  // namespace nucsearch

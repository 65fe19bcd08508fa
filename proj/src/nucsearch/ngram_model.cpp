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

#include "nucsearch/ngram_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "nucsearch/error.hpp"

namespace nucsearch {

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t start = line.find_first_not_of(" \t\r\f\v", pos);
    if (start == std::string_view::npos) break;
    std::size_t end = line.find_first_of(" \t\r\f\v", start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::vector<std::vector<std::string_view>> tokenize_lines(std::string_view corpus) {
  std::vector<std::vector<std::string_view>> lines;
  std::size_t pos = 0;
  while (pos <= corpus.size()) {
    std::size_t end = corpus.find('\n', pos);
    if (end == std::string_view::npos) end = corpus.size();
    auto words = split_whitespace(corpus.substr(pos, end - pos));
    if (!words.empty()) lines.push_back(std::move(words));
    pos = end + 1;
  }
  return lines;
}

}  // namespace

NGramModel::NGramModel(Vocabulary vocab, int order, double add_k, Counts counts)
    : vocab_(std::move(vocab)), order_(order), add_k_(add_k), counts_(std::move(counts)) {
  if (order_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram order must be >= 1");
  }
  if (!(add_k_ > 0.0) || !std::isfinite(add_k_)) {
    throw Error(ErrorCode::kInvalidArgument, "add_k must be a positive number");
  }
  if (vocab_.find(kBeginToken)) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary may not contain <s>");
  }
  const std::size_t history_len = static_cast<std::size_t>(order_ - 1);
  for (const auto& [history, row] : counts_) {
    if (history.size() != history_len) {
      throw Error(ErrorCode::kInvalidArgument, "count history has wrong length");
    }
    // Once a real token appears, the begin marker cannot follow it.
    bool seen_token = false;
    for (TokenId id : history) {
      if (id == kBeginMarker) {
        if (seen_token) {
          throw Error(ErrorCode::kInvalidArgument, "misplaced <s> in history");
        }
        continue;
      }
      seen_token = true;
      if (!vocab_.contains(id) || id == vocab_.eos_id()) {
        throw Error(ErrorCode::kInvalidTokenId, "invalid token id in history");
      }
    }
    if (row.size() != vocab_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "count row does not match vocabulary");
    }
  }
}

std::uint64_t NGramModel::count(const History& history, TokenId token) const {
  auto it = counts_.find(history);
  if (it == counts_.end() || !vocab_.contains(token)) return 0;
  return it->second[static_cast<std::size_t>(token)];
}

NGramModel::History NGramModel::history_for(std::span<const TokenId> prefix) const {
  const std::size_t len = static_cast<std::size_t>(order_ - 1);
  History h(len, kBeginMarker);
  const std::size_t take = std::min(len, prefix.size());
  std::copy(prefix.end() - static_cast<std::ptrdiff_t>(take), prefix.end(),
            h.end() - static_cast<std::ptrdiff_t>(take));
  return h;
}

Distribution NGramModel::lookup(std::string_view /*context*/,
                                std::span<const TokenId> prefix) const {
  const std::size_t v = vocab_.size();
  std::vector<double> probs(v, 0.0);
  auto it = counts_.find(history_for(prefix));
  double total = 0.0;
  if (it != counts_.end()) {
    for (std::uint64_t c : it->second) total += static_cast<double>(c);
  }
  const double denom = total + add_k_ * static_cast<double>(v);
  for (std::size_t y = 0; y < v; ++y) {
    const double c = it != counts_.end() ? static_cast<double>(it->second[y]) : 0.0;
    probs[y] = (c + add_k_) / denom;
  }
  return Distribution::from_probs(std::move(probs));
}

NGramModel train_ngram(std::string_view corpus, int order, double add_k) {
  if (order < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram order must be >= 1");
  }
  if (!(add_k > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "add_k must be > 0");
  }
  const auto lines = tokenize_lines(corpus);
  if (lines.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus has no non-blank lines");
  }

  std::set<std::string, std::less<>> distinct;
  for (const auto& line : lines) {
    for (std::string_view w : line) {
      if (w == Vocabulary::kEos) {
        throw Error(ErrorCode::kInvalidArgument,
                    "</s> may not appear inside a corpus line");
      }
      if (w == NGramModel::kBeginToken) {
        throw Error(ErrorCode::kInvalidArgument, "<s> is reserved");
      }
      distinct.emplace(w);
    }
  }
  std::vector<std::string> tokens(distinct.begin(), distinct.end());
  tokens.emplace_back(Vocabulary::kEos);
  Vocabulary vocab(std::move(tokens));

  const std::size_t history_len = static_cast<std::size_t>(order - 1);
  NGramModel::Counts counts;
  for (const auto& line : lines) {
    std::vector<TokenId> ids(history_len, NGramModel::kBeginMarker);
    for (std::string_view w : line) ids.push_back(*vocab.find(w));
    ids.push_back(vocab.eos_id());
    for (std::size_t t = history_len; t < ids.size(); ++t) {
      NGramModel::History h(ids.begin() + static_cast<std::ptrdiff_t>(t - history_len),
                            ids.begin() + static_cast<std::ptrdiff_t>(t));
      auto& row = counts[h];
      if (row.empty()) row.assign(vocab.size(), 0);
      ++row[static_cast<std::size_t>(ids[t])];
    }
  }
  return NGramModel(std::move(vocab), order, add_k, std::move(counts));
}

}  // namespace nucsearch

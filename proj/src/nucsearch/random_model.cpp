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

#include "nucsearch/random_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "nucsearch/error.hpp"

namespace nucsearch {

namespace {

constexpr double kMaxEntries = 1e7;

std::vector<double> draw_dirichlet(std::mt19937_64& rng, std::size_t n, double alpha) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> probs(n);
  for (;;) {
    double sum = 0.0;
    for (double& v : probs) {
      v = gamma(rng);
      sum += v;
    }
    // All-zero draws only happen for tiny alpha; redraw.
    if (sum > 0.0 && std::isfinite(sum)) {
      for (double& v : probs) v /= sum;
      return probs;
    }
  }
}

}  // namespace

TableModel random_model(const RandomModelSpec& spec) {
  if (spec.vocab_size < 2) {
    throw Error(ErrorCode::kInvalidArgument, "vocab_size must be >= 2");
  }
  if (spec.max_prefix_len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_prefix_len must be >= 1");
  }
  if (!(spec.concentration > 0.0) || !std::isfinite(spec.concentration)) {
    throw Error(ErrorCode::kInvalidArgument, "concentration must be > 0");
  }
  const std::size_t branching = spec.vocab_size - 1;
  double total = 0.0;
  double level = 1.0;
  for (std::size_t l = 0; l <= spec.max_prefix_len; ++l) {
    total += level;
    level *= static_cast<double>(branching);
  }
  if (total > kMaxEntries) {
    throw Error(ErrorCode::kSpaceTooLarge, "random model table would be too large");
  }

  std::vector<std::string> tokens;
  for (std::size_t i = 0; i + 1 < spec.vocab_size; ++i) {
    tokens.push_back("w" + std::to_string(i));
  }
  tokens.emplace_back(Vocabulary::kEos);
  Vocabulary vocab(std::move(tokens));

  std::mt19937_64 rng(spec.seed);
  TableModel::PrefixTable table;
  std::vector<std::vector<TokenId>> frontier{{}};
  for (std::size_t len = 0; len <= spec.max_prefix_len; ++len) {
    std::vector<std::vector<TokenId>> next;
    for (auto& prefix : frontier) {
      auto probs = draw_dirichlet(rng, spec.vocab_size, spec.concentration);
      // Sum is 1 up to rounding; renormalize removes the residue.
      table.emplace(prefix, Distribution::from_probs(std::move(probs), 1e-9, true));
      if (len == spec.max_prefix_len) continue;
      for (std::size_t t = 0; t < branching; ++t) {
        auto child = prefix;
        child.push_back(static_cast<TokenId>(t));
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }

  TableModel::Entries entries;
  entries.emplace("", std::move(table));
  return TableModel(std::move(vocab), std::move(entries));
}

}  // namespace nucsearch

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

#ifndef NUCSEARCH_DISTRIBUTION_HPP_
#define NUCSEARCH_DISTRIBUTION_HPP_

#include <span>
#include <vector>

#include "nucsearch/vocabulary.hpp"

namespace nucsearch {

// Next-token probability vector with cached natural logs (log 0 = -inf).
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  // Validates entries (finite, non-negative) and the unit sum within
  // `tolerance`. With `renormalize`, entries are divided by their sum after
  // validation.
  static Distribution from_probs(std::vector<double> probs,
                                 double tolerance = kSumTolerance,
                                 bool renormalize = false);

  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  std::span<const double> log_probs() const noexcept { return log_probs_; }
  double prob(TokenId id) const { return probs_.at(static_cast<std::size_t>(id)); }
  double log_prob(TokenId id) const {
    return log_probs_.at(static_cast<std::size_t>(id));
  }

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.probs_ == b.probs_;
  }

 private:
  explicit Distribution(std::vector<double> probs);

  std::vector<double> probs_;
  std::vector<double> log_probs_;
};

}  // namespace nucsearch

#endif  // NUCSEARCH_DISTRIBUTION_HPP_

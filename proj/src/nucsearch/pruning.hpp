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

#ifndef NUCSEARCH_PRUNING_HPP_
#define NUCSEARCH_PRUNING_HPP_

#include <span>
#include <vector>

#include "nucsearch/distribution.hpp"

namespace nucsearch {

// Top-p nucleus of a distribution: tokens ordered by probability (descending,
// ties by ascending id), truncated at the shortest prefix whose cumulative
// mass reaches p (>= p, not > p).
struct Nucleus {
  std::vector<TokenId> token_ids;
  double mass = 0.0;  // sum of original probabilities of the members
  double p = 1.0;
};

struct PrunedDistribution {
  Distribution distribution;  // P(y)/mass inside the nucleus, 0 outside
  Nucleus nucleus;
};

// Throws InvalidThreshold unless 0 < p <= 1.
void check_threshold(double p);

// Length of the nucleus over `sorted_masses`, which must already be in
// selection order (non-increasing). Cumulative sums run left to right; if
// rounding keeps them below p to the end, every positive entry is taken.
std::size_t nucleus_length(std::span<const double> sorted_masses, double p);

Nucleus nucleus_set(const Distribution& dist, double p);
PrunedDistribution tail_prune(const Distribution& dist, double p);

}  // namespace nucsearch

#endif  // NUCSEARCH_PRUNING_HPP_

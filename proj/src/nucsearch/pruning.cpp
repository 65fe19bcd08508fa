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

#include "nucsearch/pruning.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nucsearch/error.hpp"

namespace nucsearch {

void check_threshold(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidThreshold,
                "nucleus threshold must lie in (0, 1], got " + std::to_string(p));
  }
}

std::size_t nucleus_length(std::span<const double> sorted_masses, double p) {
  check_threshold(p);
  double cumulative = 0.0;
  std::size_t positive = 0;
  for (std::size_t i = 0; i < sorted_masses.size(); ++i) {
    if (!(sorted_masses[i] > 0.0)) break;
    ++positive;
    cumulative += sorted_masses[i];
    if (cumulative >= p) return i + 1;
  }
  return positive;
}

Nucleus nucleus_set(const Distribution& dist, double p) {
  check_threshold(p);
  const auto probs = dist.probs();
  std::vector<TokenId> order(probs.size());
  std::iota(order.begin(), order.end(), TokenId{0});
  std::stable_sort(order.begin(), order.end(), [&](TokenId a, TokenId b) {
    return probs[static_cast<std::size_t>(a)] > probs[static_cast<std::size_t>(b)];
  });

  std::vector<double> sorted(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted[i] = probs[static_cast<std::size_t>(order[i])];
  }
  const std::size_t len = nucleus_length(sorted, p);

  Nucleus nucleus;
  nucleus.p = p;
  nucleus.token_ids.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len));
  for (std::size_t i = 0; i < len; ++i) nucleus.mass += sorted[i];
  return nucleus;
}

PrunedDistribution tail_prune(const Distribution& dist, double p) {
  Nucleus nucleus = nucleus_set(dist, p);
  std::vector<double> pruned(dist.size(), 0.0);
  for (TokenId id : nucleus.token_ids) {
    pruned[static_cast<std::size_t>(id)] = dist.prob(id) / nucleus.mass;
  }
  return PrunedDistribution{Distribution::from_probs(std::move(pruned)), std::move(nucleus)};
}

}  // namespace nucsearch

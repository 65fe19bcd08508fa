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


#include <numeric>
#include <random>
#include <vector>

#include <doctest.h>

#include "nucsearch/error.hpp"
#include "nucsearch/pruning.hpp"

using namespace nucsearch;

TEST_CASE("nucleus at 0.6 over (0.4, 0.35, 0.25)") {
  auto d = Distribution::from_probs({0.4, 0.35, 0.25});
  auto n = nucleus_set(d, 0.6);
  CHECK(n.token_ids == std::vector<TokenId>{0, 1});
  CHECK(n.mass == doctest::Approx(0.75).epsilon(1e-15));
  auto pruned = tail_prune(d, 0.6);
  CHECK(pruned.distribution.prob(0) == doctest::Approx(0.4 / 0.75).epsilon(1e-15));
  CHECK(pruned.distribution.prob(1) == doctest::Approx(0.35 / 0.75).epsilon(1e-15));
  CHECK(pruned.distribution.prob(2) == 0.0);
}

TEST_CASE("dominant token alone") {
  auto d = Distribution::from_probs({0.1, 0.567, 0.2, 0.133});
  auto pruned = tail_prune(d, 0.5);
  CHECK(pruned.nucleus.token_ids == std::vector<TokenId>{1});
  CHECK(pruned.distribution.prob(1) == 1.0);
}

TEST_CASE("threshold one keeps the support") {
  auto d = Distribution::from_probs({0.5, 0.0, 0.3, 0.2});
  auto pruned = tail_prune(d, 1.0);
  CHECK(pruned.nucleus.token_ids == std::vector<TokenId>{0, 2, 3});
  for (TokenId i = 0; i < 4; ++i) {
    CHECK(pruned.distribution.prob(i) == doctest::Approx(d.prob(i)).epsilon(1e-12));
  }
}

TEST_CASE("ties break toward the lower id") {
  auto d = Distribution::from_probs({0.25, 0.25, 0.25, 0.25});
  CHECK(nucleus_set(d, 0.5).token_ids == std::vector<TokenId>{0, 1});
  CHECK(nucleus_set(d, 0.51).token_ids == std::vector<TokenId>{0, 1, 2});
}

TEST_CASE("threshold bounds") {
  auto d = Distribution::from_probs({0.5, 0.5});
  for (double p : {0.0, -0.1, 1.0000001}) {
    CHECK_THROWS_AS(nucleus_set(d, p), Error);
    CHECK_THROWS_AS(tail_prune(d, p), Error);
  }
}

TEST_CASE("nucleus_length falls back to the positive support") {
  const std::vector<double> m{0.3, 0.3, 0.3, 0.0};
  CHECK(nucleus_length(m, 0.5) == 2);
  CHECK(nucleus_length(m, 1.0) == 3);
}

TEST_CASE("random distributions keep the nucleus invariants") {
  std::mt19937_64 rng(42);
  std::gamma_distribution<double> gamma(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> w(2 + trial % 20);
    for (double& x : w) x = gamma(rng);
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= s;
    auto d = Distribution::from_probs(w);
    const double p = std::max(1e-6, unit(rng));
    auto pruned = tail_prune(d, p);
    const auto& ids = pruned.nucleus.token_ids;
    CHECK(pruned.nucleus.mass >= p);
    double total = 0.0;
    for (double x : pruned.distribution.probs()) total += x;
    CHECK(std::abs(total - 1.0) <= 1e-9);
    double without_last = 0.0;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) without_last += d.prob(ids[i]);
    CHECK(without_last < p);
  }
}

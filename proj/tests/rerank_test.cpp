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


#include <cmath>

#include <doctest.h>

#include "nucsearch/error.hpp"
#include "nucsearch/rerank.hpp"

using namespace nucsearch;

TEST_CASE("length-normalized score") {
  Hypothesis h{{0, 1, 2}, -6.0, true, {}};
  CHECK(length_normalized_score(h) == doctest::Approx(2.0));
  Hypothesis eos{{2}, std::log(0.2), true, {}};
  CHECK(length_normalized_score(eos) == doctest::Approx(-std::log(0.2)));
  Hypothesis open{{0}, -1.0, false, {}};
  CHECK_THROWS_AS(length_normalized_score(open), Error);
}

TEST_CASE("rerank prefers the longer cheaper-per-token hypothesis") {
  SearchResult r;
  r.hypotheses = {Hypothesis{{0, 9}, -4.0, true, {}},
                  Hypothesis{{1, 1, 1, 1, 9}, -7.5, true, {}}};
  auto rr = rerank(r);
  REQUIRE(rr.hypotheses.size() == 2);
  CHECK(rr.hypotheses[0].tokens.size() == 5);
  CHECK(rr.scores[0] == doctest::Approx(1.5));
  CHECK(rr.scores[1] == doctest::Approx(2.0));
  CHECK(rr.hypotheses[1].cum_logprob == -4.0);
}

TEST_CASE("rerank of equal lengths keeps the raw order") {
  SearchResult r;
  r.hypotheses = {Hypothesis{{0, 9}, -1.0, true, {}}, Hypothesis{{1, 9}, -2.0, true, {}},
                  Hypothesis{{2, 9}, -1.5, true, {}}};
  auto rr = rerank(r);
  CHECK(rr.hypotheses[0].tokens[0] == 0);
  CHECK(rr.hypotheses[1].tokens[0] == 2);
  CHECK(rr.hypotheses[2].tokens[0] == 1);

  SearchResult single;
  single.hypotheses = {Hypothesis{{9}, -0.3, true, {}}};
  CHECK(rerank(single).hypotheses[0].tokens == single.hypotheses[0].tokens);

  CHECK_THROWS_AS(rerank(SearchResult{}), Error);
}

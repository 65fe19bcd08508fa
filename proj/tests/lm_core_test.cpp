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
#include <limits>
#include <vector>

#include <doctest.h>

#include "nucsearch/error.hpp"
#include "nucsearch/model.hpp"
#include "nucsearch/model_io.hpp"
#include "nucsearch/ngram_model.hpp"
#include "nucsearch/random_model.hpp"
#include "test_util.hpp"

using namespace nucsearch;
using nucsearch::testing::make_table;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("vocabulary requires eos and unique tokens") {
  Vocabulary v({"x", "y", "</s>"});
  CHECK(v.size() == 3);
  CHECK(v.eos_id() == 2);
  CHECK(v.find("y") == 1);
  CHECK_FALSE(v.find("z").has_value());
  CHECK(v.join(std::vector<TokenId>{0, 1, 2}) == "x y </s>");
  CHECK(v.split("y x") == std::vector<TokenId>{1, 0});
  CHECK(v.split("").empty());
  CHECK(code_of([] { Vocabulary({"x", "y"}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Vocabulary({"x", "x", "</s>"}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Vocabulary({"x y", "</s>"}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { v.token(3); }) == ErrorCode::kInvalidTokenId);
}

TEST_CASE("distribution validation") {
  auto d = Distribution::from_probs({0.25, 0.75, 0.0});
  CHECK(d.log_prob(0) == doctest::Approx(std::log(0.25)));
  CHECK(std::isinf(d.log_prob(2)));
  CHECK(code_of([] { Distribution::from_probs({0.5, 0.4}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Distribution::from_probs({1.5, -0.5}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Distribution::from_probs({std::nan(""), 1.0}); }) ==
        ErrorCode::kInvalidArgument);
  auto r = Distribution::from_probs({1.0, 1.0}, 2.0, true);
  CHECK(r.prob(0) == 0.5);
}

TEST_CASE("table lookup returns the stored row unchanged") {
  auto m = make_table({"a", "b", "</s>"}, {{{}, {0.2, 0.3, 0.5}}});
  auto d = m.next_distribution("", {});
  CHECK(d == Distribution::from_probs({0.2, 0.3, 0.5}));
  CHECK(code_of([&] { m.next_distribution("other", {}); }) == ErrorCode::kUnknownContext);
  const std::vector<TokenId> a{0};
  CHECK(code_of([&] { m.next_distribution("", a); }) == ErrorCode::kUnknownContext);
}

TEST_CASE("prefix with eos or bad id is rejected") {
  auto m = make_table({"a", "b", "</s>"}, {{{}, {0.2, 0.3, 0.5}}}, {0.2, 0.3, 0.5});
  const std::vector<TokenId> eos{0, 2};
  const std::vector<TokenId> bad{7};
  CHECK(code_of([&] { m.next_distribution("", eos); }) == ErrorCode::kInvalidTokenId);
  CHECK(code_of([&] { m.next_distribution("", bad); }) == ErrorCode::kInvalidTokenId);
}

TEST_CASE("score_sequence sums step log-probabilities") {
  auto m = nucsearch::testing::short_sequence_model();
  const std::vector<TokenId> eos{2};
  CHECK(score_sequence(m, "", eos) == doctest::Approx(std::log(0.2)));
  const std::vector<TokenId> a_eos{0, 2};
  CHECK(score_sequence(m, "", a_eos) == doctest::Approx(-2.0149030205).epsilon(1e-9));

  auto z = make_table({"a", "</s>"}, {{{}, {1.0, 0.0}}}, {0.5, 0.5});
  const std::vector<TokenId> just_eos{1};
  CHECK(score_sequence(z, "", just_eos) == -std::numeric_limits<double>::infinity());

  const std::vector<TokenId> empty;
  const std::vector<TokenId> no_eos{0};
  const std::vector<TokenId> mid{2, 0, 2};
  CHECK(code_of([&] { score_sequence(m, "", empty); }) == ErrorCode::kMisplacedEos);
  CHECK(code_of([&] { score_sequence(m, "", no_eos); }) == ErrorCode::kMisplacedEos);
  CHECK(code_of([&] { score_sequence(m, "", mid); }) == ErrorCode::kMisplacedEos);
}

TEST_CASE("unigram add-one with one eos per line") {
  auto m = train_ngram("a a b\n", 1, 1.0);
  const auto& v = m.vocabulary();
  REQUIRE(v.tokens() == std::vector<std::string>{"a", "b", "</s>"});
  auto d = m.next_distribution("", {});
  // counts a:2 b:1 </s>:1, total 4, |V| 3
  CHECK(d.prob(0) == doctest::Approx(3.0 / 7).epsilon(1e-12));
  CHECK(d.prob(1) == doctest::Approx(2.0 / 7).epsilon(1e-12));
  CHECK(d.prob(2) == doctest::Approx(2.0 / 7).epsilon(1e-12));
  // context is ignored
  CHECK(m.next_distribution("anything", {}) == d);
}

TEST_CASE("ngram counts") {
  auto one = train_ngram("a", 1, 1.0);
  CHECK(one.vocabulary().tokens() == std::vector<std::string>{"a", "</s>"});
  CHECK(one.count({}, 0) == 1);
  CHECK(one.count({}, 1) == 1);

  auto bi = train_ngram("a b\na b\n", 2, 1.0);
  const TokenId a = *bi.vocabulary().find("a");
  const TokenId b = *bi.vocabulary().find("b");
  CHECK(bi.count({a}, b) == 2);
  CHECK(bi.count({NGramModel::kBeginMarker}, a) == 2);
  CHECK(bi.history_for(std::vector<TokenId>{}) == NGramModel::History{NGramModel::kBeginMarker});
  // only the last token counts: after b the counts are </s>:2 of 2
  auto d = bi.next_distribution("", std::vector<TokenId>{b, b});
  CHECK(d.prob(a) == doctest::Approx(1.0 / 5));
  CHECK(d.prob(bi.vocabulary().eos_id()) == doctest::Approx(3.0 / 5));
  // unseen history is uniform under smoothing
  auto tri = train_ngram("a b\na b\n", 3, 1.0);
  auto u = tri.next_distribution("", std::vector<TokenId>{b, b});
  CHECK(u.prob(b) == doctest::Approx(1.0 / 3));

  CHECK(code_of([] { train_ngram("a", 0, 1.0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { train_ngram("a", 2, 0.0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { train_ngram("\n \n", 2, 1.0); }) == ErrorCode::kEmptyCorpus);
  CHECK(code_of([] { train_ngram("a </s> b", 2, 1.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("random model shape and determinism") {
  RandomModelSpec spec{.seed = 11, .vocab_size = 3, .max_prefix_len = 2, .concentration = 1.0};
  auto m = random_model(spec);
  CHECK(m.entry_count() == 7);
  CHECK(m.vocabulary().tokens().back() == "</s>");
  CHECK(serialize_model(m) == serialize_model(random_model(spec)));
  spec.seed = 12;
  CHECK(serialize_model(m) != serialize_model(random_model(spec)));
}

TEST_CASE("high concentration gives near-uniform rows") {
  RandomModelSpec spec{.seed = 5, .vocab_size = 5, .max_prefix_len = 4, .concentration = 1000.0};
  auto m = random_model(spec);
  std::size_t rows = 0;
  for (const auto& [prefix, dist] : m.entries().at("")) {
    auto p = dist.probs();
    const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
    CHECK(*hi - *lo < 0.05);
    ++rows;
  }
  CHECK(rows >= 100);
}

TEST_CASE("model files round-trip") {
  auto table = random_model({.seed = 3, .vocab_size = 4, .max_prefix_len = 2});
  // loading renormalizes, so compare rows numerically
  auto again = parse_model(serialize_model(table));
  for (const auto& [prefix, dist] : table.entries().at("")) {
    auto loaded = again->next_distribution("", prefix);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      CHECK(std::abs(loaded.probs()[i] - dist.probs()[i]) <= 1e-15);
    }
  }

  auto ng = train_ngram("x y z\ny z\n", 3, 0.5);
  auto ng2 = parse_model(serialize_model(ng));
  const std::vector<TokenId> pre{0, 1};
  CHECK(ng2->next_distribution("", pre) == ng.next_distribution("", pre));

  CHECK(code_of([] { load_model("/nonexistent/model.json"); }) == ErrorCode::kModelNotFound);
  CHECK(code_of([] { parse_model("{not json"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_model(R"({"type":"table","vocab":["a"],"entries":{}})"); }) ==
        ErrorCode::kParse);
  // rows within 1e-6 are accepted and renormalized
  auto loose = parse_model(
      R"({"type":"table","vocab":["a","</s>"],"entries":{"":{"":[0.5000004,0.5]}}})");
  auto d = loose->next_distribution("", {});
  CHECK(d.prob(0) + d.prob(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(code_of([] {
          parse_model(R"({"type":"table","vocab":["a","</s>"],"entries":{"":{"":[0.6,0.5]}}})");
        }) == ErrorCode::kParse);
}

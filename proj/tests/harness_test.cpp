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


#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "nucsearch/error.hpp"
#include "nucsearch/harness.hpp"
#include "nucsearch/model.hpp"
#include "nucsearch/random_model.hpp"
#include "test_util.hpp"

using namespace nucsearch;
using namespace nucsearch::harness;
using nlohmann::json;

TEST_CASE("instance files") {
  auto xs = parse_instances("{\"id\":\"b\",\"context\":\"x\"}\n\n{\"id\":\"a\"}\n");
  REQUIRE(xs.size() == 2);
  CHECK(xs[0].id == "b");
  CHECK(xs[0].context == "x");
  CHECK(xs[1].context.empty());
  CHECK_THROWS_AS(parse_instances("{\"id\":\"a\"}\n{\"id\":\"a\"}\n"), Error);
  CHECK_THROWS_AS(parse_instances("{\"context\":\"x\"}\n"), Error);
  CHECK_THROWS_AS(parse_instances("[1,2]\n"), Error);
}

TEST_CASE("fixed formatting") {
  CHECK(format_fixed(-1.6094379124341003) == "-1.609438");
  CHECK(format_fixed(-0.0000001) == "0.000000");
  CHECK(format_fixed(0.5) == "0.500000");
}

TEST_CASE("params echo") {
  SearchConfig c;
  c.algorithm = Algorithm::kPExact;
  c.p = 0.3;
  c.k_cap = 5;
  CHECK(params_json(c) ==
        R"({"algorithm":"p_exact","p":0.300000,"scoring":"original","candidate_cap":320,)"
        R"("k_cap":5,"max_steps":200,"on_unfinished":"error"})");
}

TEST_CASE("decode records") {
  auto m = nucsearch::testing::short_sequence_model();
  DecodeOptions opts;
  opts.config.algorithm = Algorithm::kPExact;
  opts.config.p = 0.7;
  opts.config.max_steps = 3;
  opts.trace = true;
  opts.rerank = true;
  auto rep = decode_instances(m, {{"z", ""}, {"a", ""}, {"m", "missing"}}, opts);
  REQUIRE(rep.lines.size() == 3);
  auto first = json::parse(rep.lines[0]);
  CHECK(first["id"] == "a");
  CHECK(first["tokens"] == json::array({"a", "</s>"}));
  CHECK(first.contains("norm_score"));
  CHECK(first["trace"]["ranks"] == json::array({1, 3}));
  CHECK(rep.lines[0].find("\"logprob\":-2.014903,") != std::string::npos);
  auto err = json::parse(rep.lines[1]);
  CHECK(err["id"] == "m");
  CHECK(err["error"]["code"] == "UnknownContext");
  CHECK(rep.succeeded == 2);
  CHECK(rep.data_failures == 1);
  CHECK(rep.exit_code() == 2);

  // EOS pruned at every step: search failure dominates
  auto dead = nucsearch::testing::make_table({"a", "</s>"}, {}, {0.9, 0.1});
  opts.config.p = 0.5;
  auto rep2 = decode_instances(dead, {{"x", ""}, {"y", "q"}}, opts);
  CHECK(rep2.search_failures == 2);
  CHECK(rep2.exit_code() == 3);
  opts.config.on_unfinished = OnUnfinished::kReturnFlagged;
  auto rep3 = decode_instances(dead, {{"x", ""}}, opts);
  CHECK(rep3.unfinished == 1);
  CHECK(json::parse(rep3.lines[0])["unfinished"] == true);
}

TEST_CASE("decode output is independent of worker count") {
  auto m = random_model({.seed = 9, .vocab_size = 5, .max_prefix_len = 3});
  std::vector<Instance> xs;
  for (int i = 0; i < 40; ++i) xs.push_back({"i" + std::to_string(i), i % 7 ? "" : "nope"});
  DecodeOptions opts;
  opts.config.algorithm = Algorithm::kDynamic;
  opts.config.p = 0.9;
  opts.config.max_steps = 4;
  opts.trace = true;
  opts.jobs = 1;
  auto one = decode_instances(m, xs, opts);
  opts.jobs = 6;
  auto many = decode_instances(m, xs, opts);
  CHECK(one.lines == many.lines);
}

TEST_CASE("round trip of decode output") {
  auto m = random_model({.seed = 4, .vocab_size = 4, .max_prefix_len = 3});
  DecodeOptions opts;
  opts.config.k = 3;
  opts.config.max_steps = 4;
  auto rep = decode_instances(m, {{"a", ""}}, opts);
  auto rec = json::parse(rep.lines[0]);
  std::string text;
  for (const auto& t : rec["tokens"]) text += (text.empty() ? "" : " ") + t.get<std::string>();
  const double s = score_sequence(m, "", m.vocabulary().split(text));
  CHECK(rep.lines[0].find("\"logprob\":" + format_fixed(s) + ",") != std::string::npos);
}

TEST_CASE("grid expansion") {
  auto cells = parse_grid(R"({"defaults":{"max_steps":50},
                              "p_exact":{"p":[0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9],"k_cap":5},
                              "dynamic":{"p":[0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9],"k_cap":5}})");
  CHECK(cells.size() == 18);
  CHECK(cells[0].name == "p_exact_p0.1_kcap5");
  CHECK(cells[0].config.max_steps == 50);
  CHECK(cells[17].config.algorithm == Algorithm::kDynamic);
  CHECK(*cells[17].config.k_cap == 5);

  CHECK_THROWS_AS(parse_grid("{}"), Error);
  CHECK(parse_grid(R"({"beam":{}})").size() == 1);
  CHECK_THROWS_AS(parse_grid(R"({"beam":{"k":[]}})"), Error);
  CHECK_THROWS_AS(parse_grid(R"({"beam":{"width":[1]}})"), Error);
  CHECK_THROWS_AS(parse_grid(R"({"greedy":{"k":[1]}})"), Error);
  CHECK_THROWS_AS(parse_grid(R"({"p_exact":{"p":[0.0]}})"), Error);
}

TEST_CASE("sweep over beam sizes") {
  auto m = random_model({.seed = 21, .vocab_size = 4, .max_prefix_len = 4});
  auto cells = parse_grid(R"({"beam":{"k":[1,2,3,4,5],"max_steps":5,
                                      "on_unfinished":"return_flagged"}})");
  std::vector<Instance> xs;
  for (int i = 0; i < 5; ++i) xs.push_back({"s" + std::to_string(i), ""});
  auto dir = nucsearch::testing::scratch_dir("sweep");
  auto summary = run_sweep(m, cells, xs, dir, 2);
  REQUIRE(summary.size() == 5);
  for (const auto& cell : cells) CHECK(std::filesystem::exists(dir / (cell.name + ".jsonl")));
  CHECK(std::filesystem::exists(dir / "summary.tsv"));
  CHECK(summary[3].mean_logprob >= summary[0].mean_logprob);
  CHECK(summary[4].mean_logprob >= summary[0].mean_logprob);
  std::filesystem::remove_all(dir);
}

TEST_CASE("rank report skips error records") {
  const std::string jsonl =
      "{\"id\":\"a\",\"tokens\":[],\"trace\":{\"ranks\":[1,6]}}\n"
      "{\"id\":\"b\",\"error\":{\"code\":\"UnknownContext\",\"message\":\"\"}}\n"
      "{\"id\":\"c\",\"tokens\":[],\"trace\":{\"ranks\":[2,3]}}\n";
  auto rep = analyze_ranks(jsonl, 5);
  CHECK(rep.skipped == 1);
  CHECK(rep.partition.within_count == 1);
  CHECK(rep.partition.exceeds_count == 1);
  try {
    analyze_ranks("{\"id\":\"a\",\"tokens\":[]}\n", 5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingTrace);
  }
}

TEST_CASE("oracle check detects a capped frontier") {
  // greedy takes a (0.55) then is stuck with 0.2 steps; b </s> is worth 0.45*0.9
  auto m = nucsearch::testing::make_table(
      {"a", "b", "</s>"},
      {{{}, {0.55, 0.45, 0.0}}, {{0}, {0.4, 0.4, 0.2}}, {{1}, {0.05, 0.05, 0.9}}},
      {0.0, 0.0, 1.0});
  OracleCheckOptions opts;
  opts.ps = {1.0};
  opts.scorings = {Scoring::kOriginal};
  OracleCheckReport exact;
  check_model_against_oracle(m, "", "fixture", 3, opts, exact);
  CHECK(exact.passed());
  opts.candidate_cap = 1;
  OracleCheckReport capped;
  check_model_against_oracle(m, "", "fixture", 3, opts, capped);
  CHECK(capped.mismatches == 1);
  CHECK_FALSE(capped.passed());
  CHECK(json::parse(capped.to_json())["verdict"] == "fail");
}

TEST_CASE("small oracle suite passes") {
  OracleCheckOptions opts;
  opts.models = 10;
  auto rep = run_oracle_check(opts);
  CHECK(rep.cases.size() == 80);
  CHECK(rep.passed());
}

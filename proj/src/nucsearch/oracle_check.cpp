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

#include <json.hpp>

#include "nucsearch/error.hpp"
#include "nucsearch/harness.hpp"
#include "nucsearch/oracle.hpp"
#include "nucsearch/random_model.hpp"

namespace nucsearch::harness {

namespace {

using nlohmann::json;

const char* status_name(OracleCase::Status s) {
  switch (s) {
    case OracleCase::Status::kPass: return "pass";
    case OracleCase::Status::kMismatch: return "mismatch";
    case OracleCase::Status::kError: return "error";
  }
  return "?";
}

}  // namespace

void check_model_against_oracle(const ScoringModel& model, std::string_view context,
                                std::string_view label, std::size_t max_len,
                                const OracleCheckOptions& options,
                                OracleCheckReport& report) {
  for (double p : options.ps) {
    for (Scoring scoring : options.scorings) {
      OracleCase c;
      c.model = std::string(label);
      c.vocab_size = model.vocabulary().size();
      c.p = p;
      c.scoring = scoring;
      try {
        auto expected = oracle::exhaustive_best(model, context, p, max_len, scoring);

        SearchConfig config;
        config.algorithm = Algorithm::kPExact;
        config.p = p;
        config.scoring = scoring;
        config.candidate_cap = options.candidate_cap;
        config.max_steps = max_len;
        std::optional<Hypothesis> found;
        try {
          found = p_exact_search(model, context, config).best();
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNoFinishedHypothesis) throw;
        }

        if (expected) {
          c.oracle_tokens = expected->tokens;
          c.oracle_score = expected->cum_logprob;
        }
        if (found) {
          c.search_tokens = found->tokens;
          c.search_score = found->cum_logprob;
        }
        if (!expected && !found) {
          c.status = OracleCase::Status::kPass;
        } else if (!expected || !found) {
          c.status = OracleCase::Status::kMismatch;
          c.detail = expected ? "search found no sequence" : "oracle found no sequence";
        } else if (expected->tokens != found->tokens) {
          c.status = OracleCase::Status::kMismatch;
          c.detail = "token sequences differ";
        } else if (!(std::fabs(expected->cum_logprob - found->cum_logprob) <=
                     options.tolerance)) {
          c.status = OracleCase::Status::kMismatch;
          c.detail = "scores differ";
        }
      } catch (const Error& e) {
        c.status = OracleCase::Status::kError;
        c.detail = std::string(error_code_name(e.code())) + ": " + e.what();
      }
      if (c.status == OracleCase::Status::kMismatch) ++report.mismatches;
      if (c.status == OracleCase::Status::kError) ++report.errors;
      report.cases.push_back(std::move(c));
    }
  }
}

OracleCheckReport run_oracle_check(const OracleCheckOptions& options) {
  if (options.min_vocab < 2 || options.max_vocab < options.min_vocab) {
    throw Error(ErrorCode::kInvalidArgument, "invalid vocabulary size range");
  }
  OracleCheckReport report;
  const std::size_t span = options.max_vocab - options.min_vocab + 1;
  for (std::size_t i = 0; i < options.models; ++i) {
    RandomModelSpec spec;
    spec.seed = options.base_seed + i;
    spec.vocab_size = options.min_vocab + i % span;
    spec.max_prefix_len = options.max_prefix_len;
    spec.concentration = options.concentration;
    const TableModel model = random_model(spec);
    check_model_against_oracle(model, "", "seed=" + std::to_string(spec.seed),
                               spec.max_prefix_len + 1, options, report);
  }
  return report;
}

std::string OracleCheckReport::to_json() const {
  json doc;
  doc["verdict"] = passed() ? "pass" : "fail";
  doc["cases"] = cases.size();
  doc["mismatches"] = mismatches;
  doc["errors"] = errors;
  json rows = json::array();
  for (const OracleCase& c : cases) {
    json row;
    row["model"] = c.model;
    row["vocab_size"] = c.vocab_size;
    row["p"] = c.p;
    row["scoring"] = scoring_name(c.scoring);
    row["status"] = status_name(c.status);
    if (!c.detail.empty()) row["detail"] = c.detail;
    if (c.status != OracleCase::Status::kPass) {
      row["search_tokens"] = c.search_tokens ? json(*c.search_tokens) : json(nullptr);
      row["oracle_tokens"] = c.oracle_tokens ? json(*c.oracle_tokens) : json(nullptr);
      row["search_score"] = c.search_score;
      row["oracle_score"] = c.oracle_score;
    }
    rows.push_back(std::move(row));
  }
  doc["results"] = std::move(rows);
  return doc.dump();
}

}  // namespace nucsearch::harness

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

#ifndef NUCSEARCH_HARNESS_HPP_
#define NUCSEARCH_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nucsearch/model.hpp"
#include "nucsearch/search.hpp"

// Batch drivers behind the command-line tool: decoding instance files to
// JSONL, hyperparameter sweeps, oracle equivalence checks and max-rank
// analysis of decode traces.
namespace nucsearch::harness {

struct Instance {
  std::string id;
  std::string context;  // "" = unconditional
};

// JSONL, one {"id": "...", "context": "..."} object per line; context is
// optional. Blank lines are skipped. Throws Parse on malformed lines or
// duplicate ids.
std::vector<Instance> parse_instances(std::string_view jsonl);
std::vector<Instance> read_instances(const std::filesystem::path& path);

// "%.6f", the only float format used in output records.
std::string format_fixed(double value);

// Stable JSON echo of the parameters relevant to config.algorithm.
std::string params_json(const SearchConfig& config);

struct DecodeOptions {
  SearchConfig config;
  bool trace = false;
  bool rerank = false;
  std::size_t jobs = 1;  // 0 = hardware concurrency
};

struct DecodeReport {
  std::vector<std::string> lines;  // one JSON record per instance, sorted by id
  std::size_t succeeded = 0;
  std::size_t unfinished = 0;       // succeeded with a flagged unfinished output
  std::size_t data_failures = 0;
  std::size_t search_failures = 0;  // NoFinishedHypothesis
  double sum_logprob = 0.0;         // over succeeded instances
  double sum_length = 0.0;

  // 0 success, 2 data error, 3 search failure (search failures dominate).
  int exit_code() const noexcept;
};

DecodeReport decode_instances(const ScoringModel& model, std::vector<Instance> instances,
                              const DecodeOptions& options);

// Runs decode_instances() over an instance file and writes the records.
DecodeReport decode_file(const ScoringModel& model, const std::filesystem::path& input,
                         const std::filesystem::path& output, const DecodeOptions& options);

struct SweepCell {
  std::string name;
  SearchConfig config;
};

// Grid file (JSON):
//   {"defaults": {"max_steps": 50, ...},
//    "beam":    {"k": [1, 2, 3]},
//    "p_exact": {"p": [0.1, 0.5], "k_cap": [5]},
//    "dynamic": {"p": [0.6], "scoring": "original"}}
// Per-algorithm values are lists (scalars count as singletons); cells are the
// cartesian product in a fixed key order. Throws InvalidArgument for an empty
// grid or unknown keys.
std::vector<SweepCell> parse_grid(std::string_view json_text);

struct SweepCellSummary {
  std::string name;
  std::size_t instances = 0;
  std::size_t succeeded = 0;
  std::size_t unfinished = 0;
  std::size_t failures = 0;
  double mean_logprob = 0.0;
  double mean_length = 0.0;
};

// Writes <output_dir>/<cell>.jsonl per cell and <output_dir>/summary.tsv.
// Per-cell failures are recorded and the sweep continues.
std::vector<SweepCellSummary> run_sweep(const ScoringModel& model,
                                        const std::vector<SweepCell>& cells,
                                        const std::vector<Instance>& instances,
                                        const std::filesystem::path& output_dir,
                                        std::size_t jobs);

struct OracleCheckOptions {
  std::size_t models = 200;
  std::uint64_t base_seed = 1;
  std::size_t min_vocab = 3;  // vocab sizes include </s>
  std::size_t max_vocab = 6;
  std::size_t max_prefix_len = 4;
  double concentration = 1.0;
  std::vector<double> ps{0.3, 0.5, 0.7, 0.9};
  std::vector<Scoring> scorings{Scoring::kOriginal, Scoring::kRenormalized};
  std::size_t candidate_cap = 1000000;
  double tolerance = 1e-12;
};

struct OracleCase {
  std::string model;  // "seed=<n>" or the model label
  std::size_t vocab_size = 0;
  double p = 0.0;
  Scoring scoring = Scoring::kOriginal;
  enum class Status { kPass, kMismatch, kError } status = Status::kPass;
  std::string detail;
  std::optional<std::vector<TokenId>> search_tokens;
  std::optional<std::vector<TokenId>> oracle_tokens;
  double search_score = 0.0;
  double oracle_score = 0.0;
};

struct OracleCheckReport {
  std::vector<OracleCase> cases;
  std::size_t mismatches = 0;
  std::size_t errors = 0;
  bool passed() const noexcept { return mismatches == 0 && errors == 0; }
  std::string to_json() const;
};

// Compares p-exact search against exhaustive_best on one model for every
// (p, scoring) pair, with max_steps = max_len.
void check_model_against_oracle(const ScoringModel& model, std::string_view context,
                                std::string_view label, std::size_t max_len,
                                const OracleCheckOptions& options,
                                OracleCheckReport& report);

// Seeded random-model fuzz suite. Model i has seed base_seed + i and
// vocab size min_vocab + i % (max_vocab - min_vocab + 1).
OracleCheckReport run_oracle_check(const OracleCheckOptions& options);

struct RankReport {
  RankPartition partition;
  std::size_t skipped = 0;  // error records without output
  std::string to_json() const;
};

// Reads decode JSONL written with traces. Throws MissingTrace for a record
// that has output but no trace.ranks.
RankReport analyze_ranks(std::string_view jsonl, std::uint32_t threshold);
RankReport analyze_ranks_file(const std::filesystem::path& path, std::uint32_t threshold);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace nucsearch::harness

#endif  // NUCSEARCH_HARNESS_HPP_

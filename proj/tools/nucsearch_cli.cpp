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

// Command-line front end. Talks to the engine only through the C API.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 search failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nucsearch/nucsearch.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSearch = 3;

struct ModelDeleter {
  void operator()(ns_model* m) const { ns_model_free(m); }
};
struct ConfigDeleter {
  void operator()(ns_config* c) const { ns_config_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { ns_string_free(s); }
};
using ModelPtr = std::unique_ptr<ns_model, ModelDeleter>;
using ConfigPtr = std::unique_ptr<ns_config, ConfigDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code_for(ns_status status) {
  switch (status) {
    case NS_OK: return kExitOk;
    case NS_ERR_INVALID_ARGUMENT:
    case NS_ERR_INVALID_THRESHOLD: return kExitUsage;
    case NS_ERR_NO_FINISHED_HYPOTHESIS: return kExitSearch;
    default: return kExitData;
  }
}

// Prints a machine-readable error record to stderr.
int report(ns_status status) {
  std::cerr << "{\"error\":{\"code\":\"" << ns_status_name(status) << "\",\"message\":"
            << std::quoted(ns_last_error()) << "}}\n";
  return exit_code_for(status);
}

int usage(const std::string& message) {
  std::cerr << "usage error: " << message << "\n";
  return kExitUsage;
}

std::string slurp(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  ok = static_cast<bool>(in);
  std::ostringstream buf;
  if (ok) buf << in.rdbuf();
  return buf.str();
}

struct SearchFlags {
  std::string algo = "beam";
  std::size_t k = 5;
  double p = 0.6;
  std::size_t candidate_cap = 320;
  std::size_t k_cap = 0;
  std::size_t max_steps = 200;
  std::string on_unfinished = "error";
  std::string scoring = "original";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--algo", algo, "Search algorithm")
        ->check(CLI::IsMember({"beam", "p_exact", "dynamic"}))
        ->capture_default_str();
    cmd->add_option("--k", k, "Beam size (beam)")->capture_default_str();
    cmd->add_option("--p", p, "Nucleus threshold (p_exact, dynamic)")->capture_default_str();
    cmd->add_option("--candidate-cap", candidate_cap, "Hard bound on live prefixes")
        ->capture_default_str();
    cmd->add_option("--k-cap", k_cap, "Bound on selected beam width, 0 = none")
        ->capture_default_str();
    cmd->add_option("--max-steps", max_steps, "Token budget per instance, EOS included")
        ->capture_default_str();
    cmd->add_option("--on-unfinished", on_unfinished,
                    "Behavior without a finished hypothesis")
        ->check(CLI::IsMember({"error", "return_flagged"}))
        ->capture_default_str();
    cmd->add_option("--scoring", scoring, "Per-step scores for p_exact")
        ->check(CLI::IsMember({"original", "renormalized"}))
        ->capture_default_str();
  }

  ns_status build(ConfigPtr& out) const {
    static const std::map<std::string, ns_algorithm> kAlgos = {
        {"beam", NS_ALGO_BEAM}, {"p_exact", NS_ALGO_P_EXACT}, {"dynamic", NS_ALGO_DYNAMIC}};
    ns_config* raw = nullptr;
    ns_status st = ns_config_create(kAlgos.at(algo), &raw);
    if (st != NS_OK) return st;
    out.reset(raw);
    if ((st = ns_config_set_k(raw, k)) != NS_OK) return st;
    if (algo != "beam" && (st = ns_config_set_p(raw, p)) != NS_OK) return st;
    if ((st = ns_config_set_candidate_cap(raw, candidate_cap)) != NS_OK) return st;
    if ((st = ns_config_set_k_cap(raw, k_cap)) != NS_OK) return st;
    if ((st = ns_config_set_max_steps(raw, max_steps)) != NS_OK) return st;
    st = ns_config_set_on_unfinished(raw, on_unfinished == "error"
                                              ? NS_ON_UNFINISHED_ERROR
                                              : NS_ON_UNFINISHED_RETURN_FLAGGED);
    if (st != NS_OK) return st;
    st = ns_config_set_scoring(
        raw, scoring == "original" ? NS_SCORING_ORIGINAL : NS_SCORING_RENORMALIZED);
    if (st != NS_OK) return st;
    return ns_config_validate(raw);
  }
};

int load_model(const std::string& path, ModelPtr& out) {
  ns_model* raw = nullptr;
  const ns_status st = ns_model_load(path.c_str(), &raw);
  if (st != NS_OK) return report(st);
  out.reset(raw);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam, p-exact and dynamic beam search over autoregressive models"};
  app.set_config("--config", "", "TOML run file; command-line flags take precedence");
  bool print_config = false;
  app.add_flag("--print-config", print_config,
               "Print the effective configuration, defaults included, and exit")
      ->configurable(false);
  app.require_subcommand(1);

  // decode
  auto* decode = app.add_subcommand("decode", "Decode every instance of an input file");
  std::string decode_model, decode_input, decode_output;
  SearchFlags decode_flags;
  bool decode_trace = false;
  bool decode_rerank = false;
  std::size_t decode_jobs = 1;
  decode->add_option("--model", decode_model, "Model file (JSON)");
  decode->add_option("--input", decode_input, "Instance file (JSONL)");
  decode->add_option("--output", decode_output, "Output file (JSONL)");
  decode_flags.add_to(decode);
  decode->add_flag("--trace", decode_trace, "Emit per-step widths, ranks and pool sizes");
  decode->add_flag("--rerank", decode_rerank, "Rerank finished outputs by length");
  decode->add_option("--jobs", decode_jobs, "Worker threads, 0 = all cores")
      ->capture_default_str();

  // train-ngram
  auto* train = app.add_subcommand("train-ngram", "Train an add-k smoothed n-gram model");
  std::string train_corpus, train_output;
  int train_order = 2;
  double train_add_k = 1.0;
  train->add_option("--corpus", train_corpus, "Corpus text, one sequence per line");
  train->add_option("--order", train_order, "N-gram order")->capture_default_str();
  train->add_option("--add-k", train_add_k, "Additive smoothing constant")
      ->capture_default_str();
  train->add_option("--output", train_output, "Model file to write");

  // random-model
  auto* rand_cmd = app.add_subcommand("random-model", "Write a seeded random table model");
  std::uint64_t rand_seed = 1;
  std::size_t rand_vocab = 4;
  std::size_t rand_depth = 4;
  double rand_conc = 1.0;
  std::string rand_output;
  rand_cmd->add_option("--seed", rand_seed, "Random seed")->capture_default_str();
  rand_cmd->add_option("--vocab-size", rand_vocab, "Vocabulary size, </s> included")
      ->capture_default_str();
  rand_cmd->add_option("--max-prefix-len", rand_depth, "Deepest stored prefix")
      ->capture_default_str();
  rand_cmd->add_option("--concentration", rand_conc, "Dirichlet concentration")
      ->capture_default_str();
  rand_cmd->add_option("--output", rand_output, "Model file to write");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a hyperparameter grid over an input file");
  std::string sweep_model, sweep_grid, sweep_input, sweep_outdir;
  std::size_t sweep_jobs = 1;
  sweep->add_option("--model", sweep_model, "Model file (JSON)");
  sweep->add_option("--grid", sweep_grid, "Grid specification (JSON)");
  sweep->add_option("--input", sweep_input, "Instance file (JSONL)");
  sweep->add_option("--output-dir", sweep_outdir, "Directory for per-cell outputs");
  sweep->add_option("--jobs", sweep_jobs, "Worker threads, 0 = all cores")
      ->capture_default_str();

  // oracle-check
  auto* check = app.add_subcommand(
      "oracle-check", "Compare p-exact search against exhaustive enumeration");
  ns_oracle_options oracle_opts;
  ns_oracle_options_default(&oracle_opts);
  std::string check_model, check_context, check_report, check_scoring = "both";
  std::size_t check_max_len = 5;
  std::vector<double> check_ps{0.3, 0.5, 0.7, 0.9};
  check->add_option("--model", check_model, "Check this model instead of random ones");
  check->add_option("--context", check_context, "Context key for --model");
  check->add_option("--max-len", check_max_len, "Longest sequence for --model, EOS included")
      ->capture_default_str();
  check->add_option("--p", check_ps, "Nucleus thresholds")->capture_default_str();
  check->add_option("--seeds", oracle_opts.models, "Number of random models")
      ->capture_default_str();
  check->add_option("--base-seed", oracle_opts.base_seed, "Seed of the first model")
      ->capture_default_str();
  check->add_option("--min-vocab", oracle_opts.min_vocab, "Smallest vocabulary")
      ->capture_default_str();
  check->add_option("--max-vocab", oracle_opts.max_vocab, "Largest vocabulary")
      ->capture_default_str();
  check->add_option("--max-prefix-len", oracle_opts.max_prefix_len,
                    "Deepest prefix of the random models")
      ->capture_default_str();
  check->add_option("--concentration", oracle_opts.concentration, "Dirichlet concentration")
      ->capture_default_str();
  check->add_option("--candidate-cap", oracle_opts.candidate_cap, "Frontier cap")
      ->capture_default_str();
  check->add_option("--scoring", check_scoring, "Scoring modes to check")
      ->check(CLI::IsMember({"both", "original", "renormalized"}))
      ->capture_default_str();
  check->add_option("--report", check_report, "Write the JSON report here");

  // analyze-ranks
  auto* ranks = app.add_subcommand("analyze-ranks",
                                   "Partition decode outputs by maximum selection rank");
  std::string ranks_input, ranks_output;
  std::uint32_t ranks_threshold = 5;
  ranks->add_option("--input", ranks_input, "Decode output written with --trace");
  ranks->add_option("--threshold", ranks_threshold, "Rank bound")->capture_default_str();
  ranks->add_option("--output", ranks_output, "Write the JSON report here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (print_config) {
    std::cout << app.config_to_str(true, true);
    return kExitOk;
  }

  if (decode->parsed()) {
    if (decode_model.empty() || decode_input.empty() || decode_output.empty()) {
      return usage("decode needs --model, --input and --output");
    }
    ConfigPtr config;
    if (ns_status st = decode_flags.build(config); st != NS_OK) return report(st);
    ModelPtr model;
    if (int rc = load_model(decode_model, model)) return rc;
    ns_decode_options opts{decode_trace ? 1 : 0, decode_rerank ? 1 : 0, decode_jobs};
    ns_batch_summary summary{};
    const ns_status st = ns_decode_file(model.get(), config.get(), decode_input.c_str(),
                                        decode_output.c_str(), &opts, &summary);
    if (st != NS_OK) return report(st);
    std::cerr << "decoded " << summary.succeeded << " instances ("
              << summary.unfinished << " unfinished, " << summary.data_failures
              << " data errors, " << summary.search_failures << " search failures)\n";
    return summary.exit_code;
  }

  if (train->parsed()) {
    if (train_corpus.empty() || train_output.empty()) {
      return usage("train-ngram needs --corpus and --output");
    }
    bool ok = false;
    const std::string corpus = slurp(train_corpus, ok);
    if (!ok) {
      std::cerr << "cannot read corpus " << train_corpus << "\n";
      return kExitData;
    }
    ns_model* raw = nullptr;
    ns_status st = ns_model_train_ngram(corpus.data(), corpus.size(), train_order,
                                        train_add_k, &raw);
    if (st != NS_OK) return report(st);
    ModelPtr model(raw);
    if ((st = ns_model_save(model.get(), train_output.c_str())) != NS_OK) return report(st);
    return kExitOk;
  }

  if (rand_cmd->parsed()) {
    if (rand_output.empty()) return usage("random-model needs --output");
    ns_model* raw = nullptr;
    ns_status st = ns_model_random(rand_seed, rand_vocab, rand_depth, rand_conc, &raw);
    if (st != NS_OK) return report(st);
    ModelPtr model(raw);
    if ((st = ns_model_save(model.get(), rand_output.c_str())) != NS_OK) return report(st);
    return kExitOk;
  }

  if (sweep->parsed()) {
    if (sweep_model.empty() || sweep_grid.empty() || sweep_input.empty() ||
        sweep_outdir.empty()) {
      return usage("sweep needs --model, --grid, --input and --output-dir");
    }
    ModelPtr model;
    if (int rc = load_model(sweep_model, model)) return rc;
    char* raw = nullptr;
    const ns_status st = ns_sweep(model.get(), sweep_grid.c_str(), sweep_input.c_str(),
                                  sweep_outdir.c_str(), sweep_jobs, &raw);
    if (st != NS_OK) return report(st);
    StringPtr summary(raw);
    std::cout << summary.get() << "\n";
    return kExitOk;
  }

  if (check->parsed()) {
    oracle_opts.ps = check_ps.data();
    oracle_opts.num_ps = check_ps.size();
    oracle_opts.check_original = check_scoring != "renormalized";
    oracle_opts.check_renormalized = check_scoring != "original";
    ModelPtr model;
    if (!check_model.empty()) {
      if (int rc = load_model(check_model, model)) return rc;
    }
    char* raw = nullptr;
    int passed = 0;
    const ns_status st = ns_oracle_check(&oracle_opts, model.get(), check_context.c_str(),
                                         check_max_len, &raw, &passed);
    if (st != NS_OK) return report(st);
    StringPtr json(raw);
    if (!check_report.empty()) {
      std::ofstream out(check_report, std::ios::binary | std::ios::trunc);
      out << json.get() << "\n";
      if (!out) {
        std::cerr << "cannot write " << check_report << "\n";
        return kExitData;
      }
    }
    std::cout << (passed ? "PASS" : "FAIL") << "\n";
    return passed ? kExitOk : kExitSearch;
  }

  if (ranks->parsed()) {
    if (ranks_input.empty()) return usage("analyze-ranks needs --input");
    char* raw = nullptr;
    const ns_status st = ns_analyze_ranks_file(ranks_input.c_str(), ranks_threshold, &raw);
    if (st != NS_OK) return report(st);
    StringPtr json(raw);
    if (ranks_output.empty()) {
      std::cout << json.get() << "\n";
    } else {
      std::ofstream out(ranks_output, std::ios::binary | std::ios::trunc);
      out << json.get() << "\n";
      if (!out) {
        std::cerr << "cannot write " << ranks_output << "\n";
        return kExitData;
      }
    }
    return kExitOk;
  }
  return kExitUsage;
}

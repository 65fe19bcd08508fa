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

#include "nucsearch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nucsearch/error.hpp"
#include "nucsearch/rerank.hpp"

namespace nucsearch::harness {

namespace {

using nlohmann::json;

std::string quote(std::string_view s) { return json(std::string(s)).dump(); }

template <typename T>
std::string int_list(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out + "]";
}

struct Outcome {
  std::string line;
  enum class Kind { kOk, kUnfinished, kDataFailure, kSearchFailure } kind = Kind::kOk;
  double logprob = 0.0;
  std::size_t length = 0;
};

Outcome decode_one(const ScoringModel& model, const Instance& inst,
                   const DecodeOptions& options, const std::string& params) {
  const Vocabulary& vocab = model.vocabulary();
  Outcome out;
  try {
    SearchConfig config = options.config;
    config.record_trace = options.trace;
    const SearchResult result = search(model, inst.context, config);

    const Hypothesis* top = &result.best();
    std::optional<double> norm_score;
    RerankedResult reranked;
    if (options.rerank && !result.unfinished_flag) {
      reranked = rerank(result);
      top = &reranked.hypotheses.front();
      norm_score = reranked.scores.front();
    }

    std::string& line = out.line;
    line = "{\"id\":" + quote(inst.id) + ",\"tokens\":[";
    for (std::size_t i = 0; i < top->tokens.size(); ++i) {
      if (i) line += ',';
      line += quote(vocab.token(top->tokens[i]));
    }
    line += "],\"logprob\":" + format_fixed(top->cum_logprob);
    if (norm_score) line += ",\"norm_score\":" + format_fixed(*norm_score);
    if (result.unfinished_flag) line += ",\"unfinished\":true";
    if (options.trace) {
      std::vector<std::size_t> widths;
      std::vector<std::size_t> pools;
      for (const TraceStep& ts : result.trace) {
        widths.push_back(ts.width);
        pools.push_back(ts.pool_size);
      }
      line += ",\"trace\":{\"widths\":" + int_list(widths) +
              ",\"ranks\":" + int_list(top->rank_history) +
              ",\"pool_sizes\":" + int_list(pools) + "}";
    }
    line += ",\"params\":" + params + "}";
    out.kind = result.unfinished_flag ? Outcome::Kind::kUnfinished : Outcome::Kind::kOk;
    out.logprob = top->cum_logprob;
    out.length = top->tokens.size();
  } catch (const Error& e) {
    out.kind = e.code() == ErrorCode::kNoFinishedHypothesis ? Outcome::Kind::kSearchFailure
                                                             : Outcome::Kind::kDataFailure;
    out.line = "{\"id\":" + quote(inst.id) + ",\"error\":{\"code\":" +
               quote(error_code_name(e.code())) + ",\"message\":" + quote(e.what()) +
               "},\"params\":" + params + "}";
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  // Avoid "-0.000000" so equal values print identically.
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::vector<Instance> parse_instances(std::string_view jsonl) {
  std::vector<Instance> out;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "instances line " + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string()) {
      throw Error(ErrorCode::kParse, where + ": needs a string 'id'");
    }
    Instance inst;
    inst.id = doc["id"].get<std::string>();
    if (doc.contains("context") && !doc["context"].is_null()) {
      if (!doc["context"].is_string()) {
        throw Error(ErrorCode::kParse, where + ": 'context' must be a string");
      }
      inst.context = doc["context"].get<std::string>();
    }
    if (!seen.insert(inst.id).second) {
      throw Error(ErrorCode::kParse, where + ": duplicate id '" + inst.id + "'");
    }
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<Instance> read_instances(const std::filesystem::path& path) {
  return parse_instances(read_text_file(path));
}

std::string params_json(const SearchConfig& c) {
  std::string s = "{\"algorithm\":" + quote(algorithm_name(c.algorithm));
  if (c.algorithm == Algorithm::kBeam) {
    s += ",\"k\":" + std::to_string(c.k);
  } else {
    s += ",\"p\":" + format_fixed(c.p);
  }
  if (c.algorithm == Algorithm::kPExact) {
    s += ",\"scoring\":" + quote(scoring_name(c.scoring));
  }
  s += ",\"candidate_cap\":" + std::to_string(c.candidate_cap);
  if (c.k_cap) s += ",\"k_cap\":" + std::to_string(*c.k_cap);
  s += ",\"max_steps\":" + std::to_string(c.max_steps);
  s += ",\"on_unfinished\":" + quote(on_unfinished_name(c.on_unfinished));
  return s + "}";
}

int DecodeReport::exit_code() const noexcept {
  if (search_failures) return 3;
  if (data_failures) return 2;
  return 0;
}

DecodeReport decode_instances(const ScoringModel& model, std::vector<Instance> instances,
                              const DecodeOptions& options) {
  options.config.validate();
  std::sort(instances.begin(), instances.end(),
            [](const Instance& a, const Instance& b) { return a.id < b.id; });
  const std::string params = params_json(options.config);

  std::vector<Outcome> outcomes(instances.size());
  std::size_t jobs = options.jobs ? options.jobs : std::thread::hardware_concurrency();
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, instances.size()));

  // Workers claim instances by index; each search stays on one thread and
  // results land in their sorted slot, so output order never depends on
  // scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      outcomes[i] = decode_one(model, instances[i], options, params);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  DecodeReport report;
  report.lines.reserve(outcomes.size());
  for (Outcome& o : outcomes) {
    switch (o.kind) {
      case Outcome::Kind::kUnfinished:
        ++report.unfinished;
        [[fallthrough]];
      case Outcome::Kind::kOk:
        ++report.succeeded;
        report.sum_logprob += o.logprob;
        report.sum_length += static_cast<double>(o.length);
        break;
      case Outcome::Kind::kDataFailure: ++report.data_failures; break;
      case Outcome::Kind::kSearchFailure: ++report.search_failures; break;
    }
    report.lines.push_back(std::move(o.line));
  }
  return report;
}

DecodeReport decode_file(const ScoringModel& model, const std::filesystem::path& input,
                         const std::filesystem::path& output, const DecodeOptions& options) {
  DecodeReport report = decode_instances(model, read_instances(input), options);
  std::string text;
  for (const std::string& line : report.lines) {
    text += line;
    text += '\n';
  }
  write_text_file(output, text);
  return report;
}

}  // namespace nucsearch::harness

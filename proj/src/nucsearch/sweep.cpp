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

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "nucsearch/error.hpp"
#include "nucsearch/harness.hpp"

namespace nucsearch::harness {

namespace {

using nlohmann::json;

// Product order; the first key varies slowest.
constexpr std::array<const char*, 7> kGridKeys = {
    "k", "p", "scoring", "candidate_cap", "k_cap", "max_steps", "on_unfinished"};

[[noreturn]] void grid_fail(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "sweep grid: " + what);
}

std::size_t as_count(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
    grid_fail("'" + key + "' values must be positive integers");
  }
  return v.get<std::size_t>();
}

void apply(SearchConfig& c, const std::string& key, const json& v) {
  if (key == "k") {
    c.k = as_count(v, key);
  } else if (key == "p") {
    if (!v.is_number()) grid_fail("'p' values must be numbers");
    c.p = v.get<double>();
  } else if (key == "candidate_cap") {
    c.candidate_cap = as_count(v, key);
  } else if (key == "k_cap") {
    if (v.is_null()) {
      c.k_cap.reset();
    } else {
      c.k_cap = as_count(v, key);
    }
  } else if (key == "max_steps") {
    c.max_steps = as_count(v, key);
  } else if (key == "scoring") {
    auto s = v.is_string() ? parse_scoring(v.get<std::string>()) : std::nullopt;
    if (!s) grid_fail("'scoring' must be \"original\" or \"renormalized\"");
    c.scoring = *s;
  } else if (key == "on_unfinished") {
    auto o = v.is_string() ? parse_on_unfinished(v.get<std::string>()) : std::nullopt;
    if (!o) grid_fail("'on_unfinished' must be \"error\" or \"return_flagged\"");
    c.on_unfinished = *o;
  } else {
    grid_fail("unknown key '" + key + "'");
  }
}

std::string label_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v.get<double>());
    return buf;
  }
  return v.dump();
}

std::string label_key(const std::string& key) {
  if (key == "candidate_cap") return "cap";
  if (key == "k_cap") return "kcap";
  if (key == "max_steps") return "steps";
  return key;
}

void expand(const SearchConfig& base, const std::string& prefix,
            const std::vector<std::pair<std::string, json>>& axes, std::size_t depth,
            std::vector<SweepCell>& out) {
  if (depth == axes.size()) {
    base.validate();
    out.push_back(SweepCell{prefix, base});
    return;
  }
  const auto& [key, values] = axes[depth];
  for (const json& v : values) {
    SearchConfig c = base;
    apply(c, key, v);
    expand(c, prefix + "_" + label_key(key) + label_value(v), axes, depth + 1, out);
  }
}

}  // namespace

std::vector<SweepCell> parse_grid(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    grid_fail(e.what());
  }
  if (!doc.is_object()) grid_fail("top level must be an object");

  SearchConfig defaults;
  for (const auto& [key, value] : doc.items()) {
    if (key == "defaults") {
      if (!value.is_object()) grid_fail("'defaults' must be an object");
      for (const auto& [dk, dv] : value.items()) apply(defaults, dk, dv);
    } else if (!parse_algorithm(key) || key == "p-exact") {
      grid_fail("unknown algorithm block '" + key + "'");
    }
  }

  std::vector<SweepCell> cells;
  for (Algorithm algo : {Algorithm::kBeam, Algorithm::kPExact, Algorithm::kDynamic}) {
    const char* name = algorithm_name(algo);
    if (!doc.contains(name)) continue;
    const json& block = doc[name];
    if (!block.is_object()) grid_fail(std::string("'") + name + "' must be an object");
    for (const auto& [key, value] : block.items()) {
      if (std::find(kGridKeys.begin(), kGridKeys.end(), key) == kGridKeys.end()) {
        grid_fail("unknown key '" + key + "' in '" + name + "'");
      }
    }
    std::vector<std::pair<std::string, json>> axes;
    for (const char* key : kGridKeys) {
      if (!block.contains(key)) continue;
      json values = block[key];
      if (!values.is_array()) values = json::array({values});
      if (values.empty()) grid_fail(std::string("empty list for '") + key + "'");
      axes.emplace_back(key, std::move(values));
    }
    SearchConfig base = defaults;
    base.algorithm = algo;
    expand(base, name, axes, 0, cells);
  }
  if (cells.empty()) grid_fail("no cells");

  std::set<std::string> names;
  for (const SweepCell& c : cells) {
    if (!names.insert(c.name).second) grid_fail("duplicate cell '" + c.name + "'");
  }
  return cells;
}

std::vector<SweepCellSummary> run_sweep(const ScoringModel& model,
                                        const std::vector<SweepCell>& cells,
                                        const std::vector<Instance>& instances,
                                        const std::filesystem::path& output_dir,
                                        std::size_t jobs) {
  if (cells.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep grid: no cells");
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + output_dir.string());

  std::vector<SweepCellSummary> summaries;
  std::string table =
      "cell\tinstances\tsucceeded\tunfinished\tfailures\tmean_logprob\tmean_length\n";
  for (const SweepCell& cell : cells) {
    DecodeOptions options;
    options.config = cell.config;
    options.jobs = jobs;
    const DecodeReport report = decode_instances(model, instances, options);

    std::string text;
    for (const std::string& line : report.lines) {
      text += line;
      text += '\n';
    }
    write_text_file(output_dir / (cell.name + ".jsonl"), text);

    SweepCellSummary s;
    s.name = cell.name;
    s.instances = instances.size();
    s.succeeded = report.succeeded;
    s.unfinished = report.unfinished;
    s.failures = report.data_failures + report.search_failures;
    const double n = static_cast<double>(report.succeeded);
    s.mean_logprob = report.succeeded ? report.sum_logprob / n : 0.0;
    s.mean_length = report.succeeded ? report.sum_length / n : 0.0;

    table += s.name + '\t' + std::to_string(s.instances) + '\t' +
             std::to_string(s.succeeded) + '\t' + std::to_string(s.unfinished) + '\t' +
             std::to_string(s.failures) + '\t' +
             (s.succeeded ? format_fixed(s.mean_logprob) : std::string("nan")) + '\t' +
             (s.succeeded ? format_fixed(s.mean_length) : std::string("nan")) + '\n';
    summaries.push_back(std::move(s));
  }
  write_text_file(output_dir / "summary.tsv", table);
  return summaries;
}

}  // namespace nucsearch::harness

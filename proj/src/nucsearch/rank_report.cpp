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

#include <json.hpp>

#include "nucsearch/error.hpp"
#include "nucsearch/harness.hpp"

namespace nucsearch::harness {

using nlohmann::json;

RankReport analyze_ranks(std::string_view jsonl, std::uint32_t threshold) {
  std::vector<RankedOutput> outputs;
  RankReport report;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "decode output line " + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string()) {
      throw Error(ErrorCode::kParse, where + ": needs a string 'id'");
    }
    if (doc.contains("error")) {
      ++report.skipped;
      continue;
    }
    RankedOutput out;
    out.id = doc["id"].get<std::string>();
    if (doc.contains("trace") && doc["trace"].is_object() &&
        doc["trace"].contains("ranks")) {
      const json& ranks = doc["trace"]["ranks"];
      if (!ranks.is_array()) throw Error(ErrorCode::kParse, where + ": ranks must be a list");
      std::vector<std::uint32_t> history;
      for (const json& r : ranks) {
        if (!r.is_number_unsigned()) {
          throw Error(ErrorCode::kParse, where + ": ranks must be positive integers");
        }
        history.push_back(r.get<std::uint32_t>());
      }
      out.rank_history = std::move(history);
    }
    outputs.push_back(std::move(out));
  }
  report.partition = analyze_max_rank(outputs, threshold);
  return report;
}

RankReport analyze_ranks_file(const std::filesystem::path& path, std::uint32_t threshold) {
  return analyze_ranks(read_text_file(path), threshold);
}

std::string RankReport::to_json() const {
  json doc;
  doc["threshold"] = partition.threshold;
  doc["within"] = partition.within_count;
  doc["exceeds"] = partition.exceeds_count;
  doc["skipped"] = skipped;
  json rows = json::array();
  for (const auto& e : partition.entries) {
    rows.push_back({{"id", e.id},
                    {"max_rank", e.max_rank},
                    {"subset", e.exceeds ? "exceeds" : "within"}});
  }
  doc["instances"] = std::move(rows);
  return doc.dump();
}

}  // namespace nucsearch::harness

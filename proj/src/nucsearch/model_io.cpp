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

#include "nucsearch/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nucsearch/error.hpp"
#include "nucsearch/ngram_model.hpp"
#include "nucsearch/table_model.hpp"

namespace nucsearch {

namespace {

using nlohmann::json;

constexpr double kLoadTolerance = 1e-6;

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParse, "model file: " + what);
}

Vocabulary parse_vocab(const json& doc) {
  if (!doc.contains("vocab") || !doc["vocab"].is_array()) {
    parse_fail("missing 'vocab' array");
  }
  std::vector<std::string> tokens;
  for (const auto& t : doc["vocab"]) {
    if (!t.is_string()) parse_fail("vocab entries must be strings");
    tokens.push_back(t.get<std::string>());
  }
  try {
    return Vocabulary(std::move(tokens));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

Distribution parse_row(const json& row, std::size_t vocab_size, const std::string& where) {
  if (!row.is_array() || row.size() != vocab_size) {
    parse_fail(where + ": expected an array of " + std::to_string(vocab_size) +
               " probabilities");
  }
  std::vector<double> probs;
  probs.reserve(vocab_size);
  for (const auto& v : row) {
    if (!v.is_number()) parse_fail(where + ": probabilities must be numbers");
    probs.push_back(v.get<double>());
  }
  try {
    return Distribution::from_probs(std::move(probs), kLoadTolerance, true);
  } catch (const Error& e) {
    parse_fail(where + ": " + e.what());
  }
}

std::vector<TokenId> parse_prefix(const Vocabulary& vocab, const std::string& text,
                                  const std::string& where) {
  try {
    auto ids = vocab.split(text);
    for (TokenId id : ids) {
      if (id == vocab.eos_id()) parse_fail(where + ": prefix contains </s>");
    }
    return ids;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    parse_fail(where + ": " + e.what());
  }
}

std::shared_ptr<const ScoringModel> parse_table(const json& doc) {
  Vocabulary vocab = parse_vocab(doc);
  TableModel::Entries entries;
  if (!doc.contains("entries") || !doc["entries"].is_object()) {
    parse_fail("table model needs an 'entries' object");
  }
  for (const auto& [context, table] : doc["entries"].items()) {
    if (!table.is_object()) parse_fail("entries['" + context + "'] must be an object");
    auto& rows = entries[context];
    for (const auto& [prefix, row] : table.items()) {
      const std::string where = "entries['" + context + "']['" + prefix + "']";
      auto ids = parse_prefix(vocab, prefix, where);
      if (!rows.emplace(std::move(ids), parse_row(row, vocab.size(), where)).second) {
        parse_fail(where + ": duplicate prefix");
      }
    }
  }
  std::optional<Distribution> fallback;
  if (doc.contains("fallback") && !doc["fallback"].is_null()) {
    fallback = parse_row(doc["fallback"], vocab.size(), "fallback");
  }
  try {
    return std::make_shared<TableModel>(std::move(vocab), std::move(entries),
                                        std::move(fallback));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

std::shared_ptr<const ScoringModel> parse_ngram(const json& doc) {
  Vocabulary vocab = parse_vocab(doc);
  if (!doc.contains("order") || !doc["order"].is_number_integer()) {
    parse_fail("n-gram model needs an integer 'order'");
  }
  if (!doc.contains("add_k") || !doc["add_k"].is_number()) {
    parse_fail("n-gram model needs a numeric 'add_k'");
  }
  const int order = doc["order"].get<int>();
  const double add_k = doc["add_k"].get<double>();
  NGramModel::Counts counts;
  if (doc.contains("counts")) {
    if (!doc["counts"].is_object()) parse_fail("'counts' must be an object");
    for (const auto& [hist_text, row] : doc["counts"].items()) {
      const std::string where = "counts['" + hist_text + "']";
      NGramModel::History history;
      std::istringstream words(hist_text);
      for (std::string w; words >> w;) {
        if (w == NGramModel::kBeginToken) {
          history.push_back(NGramModel::kBeginMarker);
          continue;
        }
        auto id = vocab.find(w);
        if (!id) parse_fail(where + ": unknown token '" + w + "'");
        history.push_back(*id);
      }
      if (!row.is_object()) parse_fail(where + " must be an object");
      std::vector<std::uint64_t> values(vocab.size(), 0);
      for (const auto& [tok, c] : row.items()) {
        auto id = vocab.find(tok);
        if (!id) parse_fail(where + ": unknown token '" + tok + "'");
        if (!c.is_number_unsigned()) parse_fail(where + ": counts must be unsigned integers");
        values[static_cast<std::size_t>(*id)] = c.get<std::uint64_t>();
      }
      if (!counts.emplace(std::move(history), std::move(values)).second) {
        parse_fail(where + ": duplicate history");
      }
    }
  }
  try {
    return std::make_shared<NGramModel>(std::move(vocab), order, add_k, std::move(counts));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

json vocab_json(const Vocabulary& vocab) { return json(vocab.tokens()); }

}  // namespace

std::shared_ptr<const ScoringModel> parse_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    parse_fail("missing 'type'");
  }
  const std::string type = doc["type"].get<std::string>();
  if (type == "table") return parse_table(doc);
  if (type == "ngram") return parse_ngram(doc);
  parse_fail("unknown model type '" + type + "'");
}

std::shared_ptr<const ScoringModel> load_model(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kModelNotFound, "model file not found: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string serialize_model(const ScoringModel& model) {
  json doc;
  if (const auto* table = dynamic_cast<const TableModel*>(&model)) {
    const Vocabulary& vocab = table->vocabulary();
    doc["type"] = "table";
    doc["vocab"] = vocab_json(vocab);
    json entries = json::object();
    for (const auto& [context, rows] : table->entries()) {
      json ctx = json::object();
      for (const auto& [prefix, dist] : rows) {
        ctx[vocab.join(prefix)] =
            std::vector<double>(dist.probs().begin(), dist.probs().end());
      }
      entries[context] = std::move(ctx);
    }
    doc["entries"] = std::move(entries);
    if (table->fallback()) {
      const auto p = table->fallback()->probs();
      doc["fallback"] = std::vector<double>(p.begin(), p.end());
    }
  } else if (const auto* ngram = dynamic_cast<const NGramModel*>(&model)) {
    const Vocabulary& vocab = ngram->vocabulary();
    doc["type"] = "ngram";
    doc["vocab"] = vocab_json(vocab);
    doc["order"] = ngram->order();
    doc["add_k"] = ngram->add_k();
    json counts = json::object();
    for (const auto& [history, row] : ngram->counts()) {
      std::string key;
      for (std::size_t i = 0; i < history.size(); ++i) {
        if (i) key.push_back(' ');
        key += history[i] == NGramModel::kBeginMarker ? std::string(NGramModel::kBeginToken)
                                                       : vocab.token(history[i]);
      }
      json cells = json::object();
      for (std::size_t y = 0; y < row.size(); ++y) {
        if (row[y]) cells[vocab.token(static_cast<TokenId>(y))] = row[y];
      }
      counts[key] = std::move(cells);
    }
    doc["counts"] = std::move(counts);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "model type has no file representation");
  }
  return doc.dump(1);
}

void save_model(const ScoringModel& model, const std::filesystem::path& path) {
  const std::string text = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace nucsearch

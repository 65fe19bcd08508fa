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

#ifndef NUCSEARCH_MODEL_IO_HPP_
#define NUCSEARCH_MODEL_IO_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "nucsearch/model.hpp"

namespace nucsearch {

// Model file schema (JSON):
//
//   {"type": "table",
//    "vocab": ["a", "b", "</s>"],
//    "entries": {"<context>": {"<space-joined prefix>": [p0, p1, ...]}},
//    "fallback": [p0, p1, ...]}                      // optional
//
//   {"type": "ngram", "vocab": [...], "order": 2, "add_k": 1.0,
//    "counts": {"<space-joined history, <s> = begin>": {"<token>": count}}}
//
// Context "" is unconditional, prefix "" is the empty prefix. Probability
// rows must sum to 1 within 1e-6 and are renormalized on load.
std::shared_ptr<const ScoringModel> parse_model(std::string_view json_text);
std::shared_ptr<const ScoringModel> load_model(const std::filesystem::path& path);

// Throws InvalidArgument for model types without a file representation.
std::string serialize_model(const ScoringModel& model);
void save_model(const ScoringModel& model, const std::filesystem::path& path);

}  // namespace nucsearch

#endif  // NUCSEARCH_MODEL_IO_HPP_

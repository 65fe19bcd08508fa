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

#include "nucsearch/error.hpp"
#include "nucsearch/search.hpp"

namespace nucsearch {

RankPartition analyze_max_rank(std::span<const RankedOutput> outputs,
                               std::uint32_t threshold) {
  RankPartition report;
  report.threshold = threshold;
  report.entries.reserve(outputs.size());
  for (const RankedOutput& out : outputs) {
    if (!out.rank_history || out.rank_history->empty()) {
      throw Error(ErrorCode::kMissingTrace, "instance '" + out.id + "' has no rank trace");
    }
    RankPartition::Entry e;
    e.id = out.id;
    e.max_rank = *std::max_element(out.rank_history->begin(), out.rank_history->end());
    e.exceeds = e.max_rank > threshold;
    ++(e.exceeds ? report.exceeds_count : report.within_count);
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace nucsearch

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

#include "nucsearch/distribution.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nucsearch/error.hpp"

namespace nucsearch {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  log_probs_.resize(probs_.size());
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    log_probs_[i] = probs_[i] > 0.0 ? std::log(probs_[i])
                                    : -std::numeric_limits<double>::infinity();
  }
}

Distribution Distribution::from_probs(std::vector<double> probs, double tolerance,
                                      bool renormalize) {
  if (probs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty distribution");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double v = probs[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "invalid probability at index " + std::to_string(i));
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > tolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  if (renormalize) {
    for (double& v : probs) v /= sum;
  }
  return Distribution(std::move(probs));
}

}  // namespace nucsearch

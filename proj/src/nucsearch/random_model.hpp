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

#ifndef NUCSEARCH_RANDOM_MODEL_HPP_
#define NUCSEARCH_RANDOM_MODEL_HPP_

#include <cstdint>

#include "nucsearch/table_model.hpp"

namespace nucsearch {

struct RandomModelSpec {
  std::uint64_t seed = 0;
  std::size_t vocab_size = 4;      // includes </s>
  std::size_t max_prefix_len = 4;  // deepest prefix with a stored distribution
  double concentration = 1.0;      // symmetric Dirichlet alpha
};

// Seeded random table model. Every non-EOS prefix of length
// 0..max_prefix_len gets an independent Dirichlet(concentration) draw, so the
// table has sum_{l=0}^{max_prefix_len} (vocab_size-1)^l entries. Tokens are
// "w0".."w{n-2}" followed by "</s>". Sequences of up to max_prefix_len + 1
// tokens can be scored.
TableModel random_model(const RandomModelSpec& spec);

}  // namespace nucsearch

#endif  // NUCSEARCH_RANDOM_MODEL_HPP_

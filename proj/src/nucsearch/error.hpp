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

#ifndef NUCSEARCH_ERROR_HPP_
#define NUCSEARCH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nucsearch {

// Values are part of the C ABI (see include/nucsearch/nucsearch.h); append only.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kModelNotFound = 2,
  kParse = 3,
  kUnknownContext = 4,
  kInvalidTokenId = 5,
  kMisplacedEos = 6,
  kInvalidThreshold = 7,
  kEmptyCorpus = 8,
  kNoFinishedHypothesis = 9,
  kUnfinishedHypothesis = 10,
  kEmptyResult = 11,
  kSpaceTooLarge = 12,
  kMissingTrace = 13,
  kIo = 14,
  kInternal = 15,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nucsearch

#endif  // NUCSEARCH_ERROR_HPP_

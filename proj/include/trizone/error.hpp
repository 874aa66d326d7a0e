/* Copyright 2026 The Trizone Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TRIZONE_ERROR_HPP_
#define TRIZONE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace trizone {

enum class ErrorCode {
  kGridMismatch,
  kUnknownClass,
  kUnknownPart,
  kOverlap,
  kEmptyMask,
  kInvalidArgument,
  kShapeMismatch,
  kIo,
  kFormat,
  kTimeout,
  kProtocol,
  kRemoteFailure,
  kUnparseableReply,
  kRoutingMismatch,
  kStageGating,
  kEmptyDataset,
  kDivergence,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the pipeline failure log, the CLI exit-code mapping) can branch on
// the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trizone

#endif  // TRIZONE_ERROR_HPP_

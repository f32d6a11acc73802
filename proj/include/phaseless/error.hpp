// Copyright 2026 The phaseless Authors.
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

#ifndef PHASELESS_ERROR_HPP_
#define PHASELESS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace phaseless {

// Values are mirrored one-to-one by pl_status in phaseless.h.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kNotAZero = 2,
  kInvalidOverlap = 3,
  kInvalidType = 4,
  kOutOfRange = 5,
  kParseError = 6,
  kFrameInvalid = 7,
  kDimMismatch = 8,
  kZeroReference = 9,
  kIndexOutOfWindow = 10,
  kShiftTooSmall = 11,
  kNotOversampled = 12,
  kEmptyOverlap = 13,
  kPhaseBreak = 14,
  kIoError = 15,
  kInternal = 99,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace phaseless

#endif  // PHASELESS_ERROR_HPP_

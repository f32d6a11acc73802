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

#include "phaseless/error.hpp"

namespace phaseless {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotAZero: return "NotAZero";
    case ErrorCode::kInvalidOverlap: return "InvalidOverlap";
    case ErrorCode::kInvalidType: return "InvalidType";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kFrameInvalid: return "FrameInvalid";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kZeroReference: return "ZeroReference";
    case ErrorCode::kIndexOutOfWindow: return "IndexOutOfWindow";
    case ErrorCode::kShiftTooSmall: return "ShiftTooSmall";
    case ErrorCode::kNotOversampled: return "NotOversampled";
    case ErrorCode::kEmptyOverlap: return "EmptyOverlap";
    case ErrorCode::kPhaseBreak: return "PhaseBreak";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace phaseless

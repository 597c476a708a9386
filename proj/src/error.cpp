// Copyright 2026 The spinchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "spinchain/error.hpp"

namespace spinchain {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid_argument";
        case ErrorCode::SizeMismatch:
            return "size_mismatch";
        case ErrorCode::AmbiguousTransition:
            return "ambiguous_transition";
        case ErrorCode::NonResonant:
            return "non_resonant";
        case ErrorCode::CapExceeded:
            return "cap_exceeded";
        case ErrorCode::StepTooLarge:
            return "step_too_large";
        case ErrorCode::MalformedConfig:
            return "malformed_config";
        case ErrorCode::Io:
            return "io";
    }
    return "unknown";
}

}  // namespace spinchain

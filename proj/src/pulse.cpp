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


#include "spinchain/pulse.hpp"

#include <cmath>

#include "spinchain/error.hpp"

namespace spinchain {

void Pulse::validate() const {
    if (!(rabi > 0.0) || !std::isfinite(rabi)) {
        throw Error(ErrorCode::InvalidArgument, "pulse '" + label + "' needs a positive Rabi frequency");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw Error(ErrorCode::InvalidArgument, "pulse '" + label + "' needs a positive duration");
    }
    if (!std::isfinite(frequency) || !std::isfinite(phase)) {
        throw Error(ErrorCode::InvalidArgument, "pulse '" + label + "' has a non-finite frequency or phase");
    }
}

std::vector<BasisState> Protocol::path_states() const {
    if (path_start.size() == 0 || target_spins.size() != pulses.size() || pulses.empty()) {
        throw Error(ErrorCode::InvalidArgument, "protocol has no path annotation");
    }
    for (const auto &t : target_spins) {
        if (!t) {
            throw Error(ErrorCode::InvalidArgument, "protocol path annotation is incomplete");
        }
    }
    std::vector<BasisState> out;
    out.reserve(pulses.size() + 1);
    out.push_back(path_start.flipped(*target_spins[0]));
    out.push_back(path_start);
    for (std::size_t n = 1; n < pulses.size(); ++n) {
        out.push_back(out.back().flipped(*target_spins[n]));
    }
    return out;
}

}  // namespace spinchain

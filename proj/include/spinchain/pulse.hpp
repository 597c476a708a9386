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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spinchain/basis_state.hpp"

namespace spinchain {

/// One rectangular rf pulse.
struct Pulse {
    double frequency = 0.0;  // nu
    double rabi = 0.0;       // Omega
    double duration = 0.0;   // tau
    double phase = 0.0;      // phi
    std::string label;

    /// Throws Error(InvalidArgument) unless Omega > 0 and tau > 0.
    void validate() const;
    /// Omega * tau, pi for a pi-pulse.
    double area() const noexcept {
        return rabi * duration;
    }
};

/// Ordered pulse sequence together with what it is meant to do.
struct Protocol {
    std::vector<Pulse> pulses;
    std::string gate;
    /// Spin flipped on the intended path by each pulse, if known.
    std::vector<std::optional<std::size_t>> target_spins;
    /// Detuning of each pulse relative to the ground state's closest
    /// transition. Empty when not annotated.
    std::vector<double> ground_detunings;
    /// Path state right after the first pulse; later path states follow by
    /// flipping target_spins in order. Empty (size 0) when not annotated.
    BasisState path_start;
    /// Basis states that form the intended result; everything else is an
    /// unwanted state in run reports.
    std::vector<BasisState> wanted;

    std::size_t size() const noexcept {
        return pulses.size();
    }
    /// s_0 .. s_P where pulse n acts on s_n and s_P is the end of the path;
    /// s_0 is path_start with the first target flipped back. Requires
    /// annotations.
    std::vector<BasisState> path_states() const;
};

}  // namespace spinchain

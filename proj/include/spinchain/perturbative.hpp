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

#include <complex>
#include <cstddef>
#include <string>

#include "spinchain/chain.hpp"
#include "spinchain/pulse.hpp"
#include "spinchain/run_report.hpp"
#include "spinchain/sparse_state.hpp"

namespace spinchain {

/// Closed-form evolution of one two-level block (|m>, |p>) with E_p > E_m
/// over a rectangular pulse:
///
///   [C_m(t0+tau)]   [mm  mp] [C_m(t0)]
///   [C_p(t0+tau)] = [pm  pp] [C_p(t0)]
///
/// Column m is the solution started in |m>, column p the one started in |p>,
/// including the t0- and tau-dependent phases. The pulse phase phi enters as
/// exp(-i phi) on pm and exp(+i phi) on mp.
struct TwoLevelPropagator {
    std::complex<double> mm, mp, pm, pp;
};

TwoLevelPropagator two_level_propagator(double rabi, double detuning, double duration, double start_time,
                                        double phase = 0.0);

/// Near-resonant excitation probability (Omega/lambda)^2 sin^2(lambda tau / 2).
double two_level_excitation(double rabi, double detuning, double duration);

struct EngineOptions {
    /// Worker threads for apply_pulse. Results do not depend on this.
    std::size_t workers = 1;
};

/// Applies one pulse under the two-level approximation. Every tracked state is
/// paired with its partner through the closest transition; resonant and
/// near-resonant pairs evolve by TwoLevelPropagator, non-resonant ones are left
/// alone. Amplitudes meeting in the same partner add coherently. Advances the
/// state time by tau. Does not prune.
SparseState apply_pulse(const SparseState &state, const Pulse &pulse, const ChainConfig &cfg,
                        const EngineOptions &options = {});

struct RunOptions {
    bool trace = false;
    bool doubled_probabilities = false;
    std::size_t workers = 1;
    std::uint64_t seed = 0;
    std::string config_hash;
};

/// Applies the protocol pulse by pulse, pruning at cfg.cutoff after each.
RunReport run_protocol(const SparseState &initial, const Protocol &protocol, const ChainConfig &cfg,
                       const RunOptions &options = {});

}  // namespace spinchain

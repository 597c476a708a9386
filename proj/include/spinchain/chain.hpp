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
#include <vector>

#include "spinchain/basis_state.hpp"

namespace spinchain {

/// Physical description of the chain. All frequencies are in units of the
/// Ising coupling J.
struct ChainConfig {
    std::size_t n_qubits = 2;
    double coupling = 1.0;          // J
    double larmor_spacing = 10.0;   // delta omega
    double base_larmor = 100.0;     // omega_0, Larmor frequency of spin 0
    double cutoff = 1e-6;           // probability threshold for pruning

    /// Builds a config with omega_0 defaulting to 10 * delta omega.
    static ChainConfig make(std::size_t n_qubits, double larmor_spacing,
                            std::optional<double> base_larmor = std::nullopt, double cutoff = 1e-6);

    /// Throws Error(InvalidArgument) when N < 2, delta omega <= 0, J <= 0 or
    /// the cutoff is outside (0, 1).
    void validate() const;

    double larmor(std::size_t k) const noexcept {
        return base_larmor + static_cast<double>(k) * larmor_spacing;
    }
};

/// Detunings closer to zero than this (in units of J) count as exact resonance.
inline constexpr double kResonanceTolerance = 1e-9;
/// Largest detuning the protocol produces for a near-resonant transition.
inline constexpr double kMaxNearResonantDetuning = 4.0;

enum class TransitionKind { Resonant, NearResonant, NonResonant };

struct TransitionClass {
    TransitionKind kind = TransitionKind::NonResonant;
    /// Signed Delta = E_p - E_m - nu with E_p > E_m. Exactly 0 when resonant.
    double detuning = 0.0;
    std::size_t spin = 0;
};

/// Diagonal energy of H0 for a basis state.
double basis_energy(const BasisState &state, const ChainConfig &cfg);

/// |E_p - E_m| for the single flip of spin k, i.e. omega_k + J * (sum of
/// neighbour sigmas).
double transition_frequency(const BasisState &state, std::size_t k, const ChainConfig &cfg);

/// Signed detuning E_p - E_m - nu of the flip of spin k under a pulse at nu.
/// Computed as (omega_k - nu) + J * (neighbour sum) so that large Larmor
/// frequencies do not cancel catastrophically.
double transition_detuning(const BasisState &state, std::size_t k, double nu, const ChainConfig &cfg);

/// All 3N - 2 distinct resonant frequencies, ascending.
std::vector<double> resonant_frequency_table(const ChainConfig &cfg);

/// Spins whose transition can be the closest one to nu for some state. Only
/// these need to be examined by classify_transition.
std::vector<std::size_t> candidate_spins(double nu, const ChainConfig &cfg);

/// Picks the spin whose single-flip transition is closest to nu and
/// classifies it. Throws Error(AmbiguousTransition) if two spins tie.
TransitionClass classify_transition(const BasisState &state, double nu, const ChainConfig &cfg);

/// Same as classify_transition with a precomputed candidate list.
TransitionClass classify_transition(const BasisState &state, double nu, const ChainConfig &cfg,
                                    const std::vector<std::size_t> &candidates);

}  // namespace spinchain

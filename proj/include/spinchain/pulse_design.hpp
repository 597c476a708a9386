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
#include <cstdint>
#include <string>
#include <variant>

#include "spinchain/chain.hpp"
#include "spinchain/pulse.hpp"

namespace spinchain {

enum class PulseKind { Pi, HalfPi };

/// Rabi frequency at which a pulse of the given kind also performs a 2 pi k
/// rotation on a transition detuned by Delta:
/// |Delta| / sqrt(4k^2 - 1) for a pi-pulse, |Delta| / sqrt(16k^2 - 1) for a
/// pi/2-pulse. Throws for k < 1 or Delta = 0.
double rabi_for_2pik(double detuning, int k, PulseKind kind);

/// Either an explicit Rabi frequency or the 2 pi k index (Delta = 2J).
struct RabiChoice {
    std::variant<double, int> value;

    static RabiChoice rabi(double omega) {
        return {omega};
    }
    static RabiChoice two_pi_k(int k) {
        return {k};
    }
    double resolve(const ChainConfig &cfg) const;
};

/// Control-Not between the chain ends: a pi/2-pulse on spin N-1 followed by
/// M = 2N - 3 pi-pulses that walk |10...0> to |10...01>:
///
///   |1000..0> -> |1100..0> -> |1110..0> -> |1010..0> -> |1011..0> -> ...
///
/// Frequencies come from walking that path and taking the transition
/// frequency of each flip. With equal_epsilon the third pi-pulse (detuning
/// 4J from the ground state) gets twice the Rabi frequency.
Protocol build_cn_protocol(const ChainConfig &cfg, RabiChoice rabi, bool equal_epsilon);

/// Number of pi-pulses M in the Control-Not protocol.
inline std::size_t cn_pi_pulse_count(std::size_t n_qubits) {
    return 2 * n_qubits - 3;
}

/// Final amplitudes of |00..0> and |10..01> after the Control-Not protocol
/// when every pi-pulse meets the 2 pi k condition for the same k.
struct AnalyticFinalState {
    std::complex<double> ground;  // C_0
    std::complex<double> target;  // C_1
    /// Unwrapped phase of C_0: pi k M - pi M sqrt(4k^2 - 1) / 2.
    double ground_phase = 0.0;
};

AnalyticFinalState analytic_final_state(std::size_t n_qubits, int k, std::size_t m_pulses);

/// Replaces Omega_n by Omega_n + eta for protocol indices first..last
/// (inclusive; index 0 is the pi/2-pulse, so pi-pulse n has index n) with eta
/// uniform in (-bound, bound). Durations are kept. Deterministic in seed.
/// Throws Error(InvalidArgument) if some Omega becomes <= 0.
Protocol perturb_protocol(const Protocol &protocol, std::size_t first, std::size_t last, double bound,
                          std::uint64_t seed);

std::string protocol_to_json(const Protocol &protocol);
Protocol protocol_from_json(const std::string &text);

}  // namespace spinchain

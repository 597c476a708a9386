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

#include <Eigen/Dense>
#include <cstddef>

#include "spinchain/chain.hpp"
#include "spinchain/pulse.hpp"
#include "spinchain/run_report.hpp"

namespace spinchain {

inline constexpr std::size_t kDefaultClassicalCap = 8;

/// Normalisation factor of the oscillator picture: with
/// x = (c + c*)/sqrt2 and p = -i(c - c*)/sqrt2, x^2 + p^2 = 2|c|^2.
inline constexpr double kOscillatorNorm = 2.0;

/// 2^N oscillator pairs for the Schroedinger amplitudes c_n of H0 + V(t).
struct OscillatorState {
    std::size_t n_qubits = 0;
    Eigen::VectorXd x;
    Eigen::VectorXd p;
    double time = 0.0;
};

/// c_n are Schroedinger-picture amplitudes in basis order.
OscillatorState to_classical(const Eigen::VectorXcd &c, double time = 0.0);
Eigen::VectorXcd to_quantum(const OscillatorState &s);

/// Interaction-picture amplitudes C_n = exp(i E_n t) c_n.
OscillatorState from_interaction(const Eigen::VectorXcd &amplitudes, const ChainConfig &cfg, double time);
Eigen::VectorXcd to_interaction(const OscillatorState &s, const ChainConfig &cfg);

/// sum (x^2 + p^2) / kOscillatorNorm, 1 for a normalised state.
double classical_norm(const OscillatorState &s);

/// H_cl = sum E_n/2 (x^2 + p^2)
///      + 1/2 sum [x_n Re V_nk x_k + p_n Re V_nk p_k + 2 p_n Im V_nk x_k]
/// at the state's time, with V the pulse coupling (zero if pulse is null).
double classical_energy(const OscillatorState &s, const ChainConfig &cfg, const Pulse *pulse);

/// (dx/dt, dp/dt) from Hamilton's equations of H_cl:
///   dx_n/dt =  E_n p_n + sum_k (Re V_nk p_k + Im V_nk x_k)
///   dp_n/dt = -E_n x_n - sum_k (Re V_nk x_k - Im V_nk p_k)
std::pair<Eigen::VectorXd, Eigen::VectorXd> hamilton_rhs(const OscillatorState &s, const ChainConfig &cfg,
                                                         const Pulse *pulse);

struct IntegrateOptions {
    /// Step h is phase_step divided by the fastest coupling phase rate.
    double phase_step = 0.02;
    double norm_tolerance = 1e-9;
    std::size_t cap = kDefaultClassicalCap;
};

/// Free oscillators (V = 0): every pair rotates at E_n.
OscillatorState free_evolution(const OscillatorState &s, const ChainConfig &cfg, double duration);

/// Integrates the pulse: the E_n rotation is applied exactly and the coupling
/// part of Hamilton's equations, written in co-rotating variables, with
/// classical RK4. Throws Error(StepTooLarge) if the norm drifts past
/// options.norm_tolerance.
OscillatorState integrate_pulse(const OscillatorState &s, const Pulse &pulse, const ChainConfig &cfg,
                                const IntegrateOptions &options = {});

OscillatorState integrate(const OscillatorState &s, const Protocol &protocol, const ChainConfig &cfg,
                          const IntegrateOptions &options = {});

struct ClassicalRunOptions {
    IntegrateOptions integrate;
    bool trace = false;
    bool doubled_probabilities = false;
    std::uint64_t seed = 0;
    std::string config_hash;
};

/// Protocol run reported like the quantum engines. `initial` holds
/// interaction-picture amplitudes at t = 0.
RunReport run_protocol_classical(const Eigen::VectorXcd &initial, const Protocol &protocol, const ChainConfig &cfg,
                                 const ClassicalRunOptions &options = {});

}  // namespace spinchain

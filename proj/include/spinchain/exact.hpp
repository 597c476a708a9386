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

inline constexpr std::size_t kDefaultExactCap = 14;

/// Time-independent Hamiltonian of one pulse in the frame rotating with it.
/// Diagonal: E_p - chi_p with chi_p = -(nu/2) sum_k sigma_k. Off-diagonal:
/// -Omega/2 between states one flip apart. Basis order is the integer value
/// of the bitstring.
struct RotatingHamiltonian {
    std::size_t n_qubits = 0;
    Eigen::VectorXd diagonal;
    /// xi_p = (phi/2) sum_k sigma_k; zero when phi = 0.
    Eigen::VectorXd xi;
    double offdiag = 0.0;
    Pulse pulse;

    std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(diagonal.size());
    }
    Eigen::MatrixXd dense() const;
};

/// Eigenpairs of a RotatingHamiltonian. Values are stored relative to
/// `shift` to keep the large Larmor offsets out of the eigensolver.
struct EigenSystem {
    Eigen::VectorXd values;   // e_q - shift
    Eigen::MatrixXd vectors;  // column q holds A_p^q
    double shift = 0.0;
};

RotatingHamiltonian build_rotating_hamiltonian(const Pulse &pulse, const ChainConfig &cfg,
                                               std::size_t cap = kDefaultExactCap);

EigenSystem diagonalize(const RotatingHamiltonian &h);

/// A(t+tau) = sum_q psi_q <psi_q|A(t)> exp(-i e_q tau).
Eigen::VectorXcd evolve_pulse_exact(const Eigen::VectorXcd &amps, const EigenSystem &eig, double tau);

/// A_p = exp(-i (E_p - chi_p) t - i xi_p) C_p.
Eigen::VectorXcd frame_to_rotating(const Eigen::VectorXcd &c, const RotatingHamiltonian &h, double t);
/// Inverse of frame_to_rotating.
Eigen::VectorXcd frame_to_interaction(const Eigen::VectorXcd &a, const RotatingHamiltonian &h, double t);

struct ExactOptions {
    std::size_t cap = kDefaultExactCap;
    bool trace = false;
    bool doubled_probabilities = false;
    std::uint64_t seed = 0;
    std::string config_hash;
};

/// Exact protocol run: for each pulse convert C -> A at the pulse start, evolve
/// with the eigensystem, convert back. Hamiltonians are cached by (nu, Omega,
/// phi) within one run.
RunReport run_protocol_exact(const Eigen::VectorXcd &initial, const Protocol &protocol, const ChainConfig &cfg,
                             const ExactOptions &options = {});

/// Dense vector in basis order from a sparse state.
Eigen::VectorXcd to_dense(const SparseState &state);
/// Sparse state holding every basis state (no pruning).
SparseState from_dense(const Eigen::VectorXcd &c, double time);

/// Eigen-decomposition of the isolated 2x2 block of state m and its partner
/// through the closest transition.
struct TwoLevelBlock {
    BasisState lower;  // |m>
    BasisState upper;  // |p>
    double diag_lower = 0.0;  // script-E_m
    double xi_lower = 0.0;    // xi_m; xi_p = xi_m - phi
    double phase = 0.0;       // phi
    double detuning = 0.0;    // Delta
    double lambda = 0.0;
    double e_low = 0.0;   // script-E_m + Delta/2 - lambda/2
    double e_high = 0.0;  // script-E_m + Delta/2 + lambda/2
    Eigen::Vector2d v_low;   // (A_m, A_p) of e_low
    Eigen::Vector2d v_high;  // (A_m, A_p) of e_high
};

/// Throws Error(NonResonant) if the closest transition is non-resonant.
TwoLevelBlock two_level_block(const BasisState &state, const Pulse &pulse, const ChainConfig &cfg);

/// Evolves (C_m, C_p) through one pulse using only the 2x2 block in the
/// rotating frame; the exact counterpart of TwoLevelPropagator.
Eigen::Vector2cd evolve_two_level_block(const TwoLevelBlock &block, const Eigen::Vector2cd &c, double start_time,
                                        double duration);

}  // namespace spinchain

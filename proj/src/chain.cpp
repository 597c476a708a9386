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


#include "spinchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spinchain/error.hpp"

namespace spinchain {

ChainConfig ChainConfig::make(std::size_t n_qubits, double larmor_spacing, std::optional<double> base_larmor,
                              double cutoff) {
    ChainConfig cfg;
    cfg.n_qubits = n_qubits;
    cfg.larmor_spacing = larmor_spacing;
    cfg.base_larmor = base_larmor.value_or(10.0 * larmor_spacing);
    cfg.cutoff = cutoff;
    cfg.validate();
    return cfg;
}

void ChainConfig::validate() const {
    if (n_qubits < 2) {
        throw Error(ErrorCode::InvalidArgument, "chain needs at least 2 qubits");
    }
    if (!(coupling > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "coupling must be positive");
    }
    if (!(larmor_spacing > 0.0) || !std::isfinite(larmor_spacing)) {
        throw Error(ErrorCode::InvalidArgument, "larmor spacing must be positive and finite");
    }
    if (!std::isfinite(base_larmor)) {
        throw Error(ErrorCode::InvalidArgument, "base larmor frequency must be finite");
    }
    if (!(cutoff > 0.0 && cutoff < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "cutoff must lie in (0, 1)");
    }
}

namespace {

void check_size(const BasisState &state, const ChainConfig &cfg) {
    if (state.size() != cfg.n_qubits) {
        throw Error(ErrorCode::SizeMismatch, "state has " + std::to_string(state.size()) + " bits, chain has " +
                                                 std::to_string(cfg.n_qubits));
    }
}

void check_spin(std::size_t k, const ChainConfig &cfg) {
    if (k >= cfg.n_qubits) {
        throw Error(ErrorCode::InvalidArgument, "spin index " + std::to_string(k) + " out of range");
    }
}

int neighbour_sum(const BasisState &state, std::size_t k) {
    int s = 0;
    if (k > 0) {
        s += state.sigma(k - 1);
    }
    if (k + 1 < state.size()) {
        s += state.sigma(k + 1);
    }
    return s;
}

}  // namespace

double basis_energy(const BasisState &state, const ChainConfig &cfg) {
    check_size(state, cfg);
    double zeeman = 0.0;
    for (std::size_t k = 0; k < cfg.n_qubits; ++k) {
        zeeman += cfg.larmor(k) * state.sigma(k);
    }
    int ising = 0;
    for (std::size_t k = 0; k + 1 < cfg.n_qubits; ++k) {
        ising += state.sigma(k) * state.sigma(k + 1);
    }
    return -0.5 * zeeman - 0.5 * cfg.coupling * ising;
}

double transition_frequency(const BasisState &state, std::size_t k, const ChainConfig &cfg) {
    check_size(state, cfg);
    check_spin(k, cfg);
    return std::abs(cfg.larmor(k) + cfg.coupling * neighbour_sum(state, k));
}

double transition_detuning(const BasisState &state, std::size_t k, double nu, const ChainConfig &cfg) {
    check_size(state, cfg);
    check_spin(k, cfg);
    return (cfg.larmor(k) - nu) + cfg.coupling * neighbour_sum(state, k);
}

std::vector<double> resonant_frequency_table(const ChainConfig &cfg) {
    std::vector<double> out;
    out.reserve(3 * cfg.n_qubits);
    const double j = cfg.coupling;
    for (std::size_t k = 0; k < cfg.n_qubits; ++k) {
        const double w = cfg.larmor(k);
        if (k == 0 || k + 1 == cfg.n_qubits) {
            out.push_back(w - j);
            out.push_back(w + j);
        } else {
            out.push_back(w - 2 * j);
            out.push_back(w);
            out.push_back(w + 2 * j);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> candidate_spins(double nu, const ChainConfig &cfg) {
    // |omega_k - nu + J s| >= |omega_k - nu| - 2J, so a spin can only be the
    // closest one if it is within 4J of the closest bare Larmor frequency.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cfg.n_qubits; ++k) {
        best = std::min(best, std::abs(cfg.larmor(k) - nu));
    }
    std::vector<std::size_t> out;
    const double reach = best + 4.0 * cfg.coupling + kResonanceTolerance;
    for (std::size_t k = 0; k < cfg.n_qubits; ++k) {
        if (std::abs(cfg.larmor(k) - nu) <= reach) {
            out.push_back(k);
        }
    }
    return out;
}

TransitionClass classify_transition(const BasisState &state, double nu, const ChainConfig &cfg) {
    return classify_transition(state, nu, cfg, candidate_spins(nu, cfg));
}

TransitionClass classify_transition(const BasisState &state, double nu, const ChainConfig &cfg,
                                    const std::vector<std::size_t> &candidates) {
    check_size(state, cfg);
    if (candidates.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no candidate spins");
    }
    TransitionClass out;
    double best = std::numeric_limits<double>::infinity();
    bool tie = false;
    for (std::size_t k : candidates) {
        const double d = transition_detuning(state, k, nu, cfg);
        const double a = std::abs(d);
        if (a < best - kResonanceTolerance) {
            best = a;
            out.spin = k;
            out.detuning = d;
            tie = false;
        } else if (a <= best + kResonanceTolerance) {
            tie = true;
        }
    }
    const double max_near = kMaxNearResonantDetuning * cfg.coupling + kResonanceTolerance;
    if (best < kResonanceTolerance) {
        out.kind = TransitionKind::Resonant;
        out.detuning = 0.0;
    } else if (best <= max_near) {
        out.kind = TransitionKind::NearResonant;
    } else {
        out.kind = TransitionKind::NonResonant;
    }
    if (tie && out.kind != TransitionKind::NonResonant) {
        throw Error(ErrorCode::AmbiguousTransition, "state " + state.to_string() + " has two transitions equally close to " +
                                                        std::to_string(nu));
    }
    return out;
}

}  // namespace spinchain

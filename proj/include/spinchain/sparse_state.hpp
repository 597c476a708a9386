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
#include <vector>

#include "spinchain/basis_state.hpp"

namespace spinchain {

struct Amplitude {
    BasisState state;
    std::complex<double> value;
};

/// Interaction-representation amplitudes of the tracked basis states, kept
/// sorted in basis order, plus the probability removed by pruning.
class SparseState {
  public:
    SparseState() = default;
    explicit SparseState(std::size_t n_qubits) : n_qubits_(n_qubits) {}

    /// Pure basis state with amplitude 1.
    static SparseState basis(const BasisState &state);
    /// Entries need not be sorted; duplicates are summed.
    static SparseState from_entries(std::size_t n_qubits, std::vector<Amplitude> entries, double leaked = 0.0,
                                    double time = 0.0);

    std::size_t n_qubits() const noexcept {
        return n_qubits_;
    }
    const std::vector<Amplitude> &entries() const noexcept {
        return entries_;
    }
    std::size_t size() const noexcept {
        return entries_.size();
    }
    bool empty() const noexcept {
        return entries_.empty();
    }
    double leaked() const noexcept {
        return leaked_;
    }
    double time() const noexcept {
        return time_;
    }
    void set_time(double t) noexcept {
        time_ = t;
    }

    /// Amplitude of a state, zero if not tracked.
    std::complex<double> amplitude(const BasisState &state) const;
    /// Index into entries(), or npos.
    std::size_t find(const BasisState &state) const;
    /// Sum of |C_p|^2 over tracked states.
    double probability_sum() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    friend SparseState prune(const SparseState &state, double cutoff);

    std::size_t n_qubits_ = 0;
    std::vector<Amplitude> entries_;
    double leaked_ = 0.0;
    double time_ = 0.0;
};

/// Drops entries with |C_p|^2 < cutoff and books their probability as leaked.
/// No renormalisation.
SparseState prune(const SparseState &state, double cutoff);

/// 1 - sum |C_p|^2.
double norm_deficit(const SparseState &state);

}  // namespace spinchain

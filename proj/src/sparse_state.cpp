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


#include "spinchain/sparse_state.hpp"

#include <algorithm>
#include <complex>
#include <numeric>

#include "spinchain/error.hpp"

namespace spinchain {

SparseState SparseState::basis(const BasisState &state) {
    SparseState s(state.size());
    s.entries_.push_back({state, {1.0, 0.0}});
    return s;
}

SparseState SparseState::from_entries(std::size_t n_qubits, std::vector<Amplitude> entries, double leaked,
                                      double time) {
    for (const auto &e : entries) {
        if (e.state.size() != n_qubits) {
            throw Error(ErrorCode::SizeMismatch, "entry " + e.state.to_string() + " does not match chain size");
        }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Amplitude &a, const Amplitude &b) { return a.state < b.state; });
    SparseState s(n_qubits);
    s.leaked_ = leaked;
    s.time_ = time;
    s.entries_.reserve(entries.size());
    for (auto &e : entries) {
        if (!s.entries_.empty() && s.entries_.back().state == e.state) {
            s.entries_.back().value += e.value;
        } else {
            s.entries_.push_back(std::move(e));
        }
    }
    return s;
}

std::size_t SparseState::find(const BasisState &state) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), state,
                               [](const Amplitude &a, const BasisState &s) { return a.state < s; });
    if (it == entries_.end() || !(it->state == state)) {
        return npos;
    }
    return static_cast<std::size_t>(it - entries_.begin());
}

std::complex<double> SparseState::amplitude(const BasisState &state) const {
    std::size_t i = find(state);
    return i == npos ? std::complex<double>{} : entries_[i].value;
}

double SparseState::probability_sum() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0.0,
                           [](double acc, const Amplitude &a) { return acc + std::norm(a.value); });
}

SparseState prune(const SparseState &state, double cutoff) {
    SparseState out(state.n_qubits_);
    out.time_ = state.time_;
    out.leaked_ = state.leaked_;
    out.entries_.reserve(state.entries_.size());
    for (const auto &e : state.entries_) {
        const double p = std::norm(e.value);
        if (p < cutoff) {
            out.leaked_ += p;
        } else {
            out.entries_.push_back(e);
        }
    }
    return out;
}

double norm_deficit(const SparseState &state) {
    return 1.0 - state.probability_sum();
}

}  // namespace spinchain

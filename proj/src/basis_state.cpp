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


#include "spinchain/basis_state.hpp"

#include <bit>

#include "spinchain/error.hpp"

namespace spinchain {

BasisState::BasisState(std::size_t n_qubits) : n_(n_qubits), words_((n_qubits + 63) / 64, 0) {}

BasisState BasisState::from_index(std::size_t n_qubits, std::uint64_t index) {
    if (n_qubits < 64 && (index >> n_qubits) != 0) {
        throw Error(ErrorCode::InvalidArgument,
                    "index " + std::to_string(index) + " does not fit in " + std::to_string(n_qubits) + " bits");
    }
    BasisState s(n_qubits);
    if (n_qubits > 0) {
        s.words_[0] = index;
    }
    return s;
}

BasisState BasisState::from_string(std::string_view bits) {
    BasisState s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        char c = bits[bits.size() - 1 - i];
        if (c == '1') {
            s.flip(i);
        } else if (c != '0') {
            throw Error(ErrorCode::InvalidArgument, "bad character in bitstring '" + std::string(bits) + "'");
        }
    }
    return s;
}

void BasisState::set(std::size_t k, bool value) noexcept {
    std::uint64_t mask = std::uint64_t{1} << (k & 63);
    if (value) {
        words_[k >> 6] |= mask;
    } else {
        words_[k >> 6] &= ~mask;
    }
}

std::size_t BasisState::count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) {
        c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
}

std::size_t BasisState::distance(const BasisState &other) const {
    if (other.n_ != n_) {
        throw Error(ErrorCode::SizeMismatch, "distance between states of different size");
    }
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        c += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
    }
    return c;
}

std::uint64_t BasisState::to_index() const {
    for (std::size_t i = 1; i < words_.size(); ++i) {
        if (words_[i] != 0) {
            throw Error(ErrorCode::InvalidArgument, "state " + to_string() + " has no 64-bit index");
        }
    }
    return words_.empty() ? 0 : words_[0];
}

std::string BasisState::to_string() const {
    std::string out(n_, '0');
    for (std::size_t k = 0; k < n_; ++k) {
        if (test(k)) {
            out[n_ - 1 - k] = '1';
        }
    }
    return out;
}

std::size_t BasisState::hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
    }
    return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const BasisState &a, const BasisState &b) noexcept {
    if (auto c = a.n_ <=> b.n_; c != 0) {
        return c;
    }
    for (std::size_t i = a.words_.size(); i-- > 0;) {
        if (auto c = a.words_[i] <=> b.words_[i]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

}  // namespace spinchain

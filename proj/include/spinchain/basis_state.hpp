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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace spinchain {

/// An N-bit configuration of the spin chain, i.e. one stationary state of the
/// Ising Hamiltonian. Bit k is spin k counted from the right, so the printed
/// form is |n_{N-1} ... n_1 n_0>. A clear bit is the spin along the field.
///
/// Ordering is the integer value of the bitstring, which is the canonical
/// basis order used by every engine.
class BasisState {
  public:
    BasisState() = default;
    explicit BasisState(std::size_t n_qubits);

    /// Requires n_qubits <= 64 or index < 2^64 with the high bits clear.
    static BasisState from_index(std::size_t n_qubits, std::uint64_t index);
    /// Leftmost character is spin N-1. Only '0' and '1' are accepted.
    static BasisState from_string(std::string_view bits);

    std::size_t size() const noexcept {
        return n_;
    }
    bool test(std::size_t k) const noexcept {
        return (words_[k >> 6] >> (k & 63)) & 1U;
    }
    void set(std::size_t k, bool value = true) noexcept;
    void flip(std::size_t k) noexcept {
        words_[k >> 6] ^= std::uint64_t{1} << (k & 63);
    }
    BasisState flipped(std::size_t k) const {
        BasisState r = *this;
        r.flip(k);
        return r;
    }
    /// +1 for a spin in |0>, -1 for |1>.
    int sigma(std::size_t k) const noexcept {
        return test(k) ? -1 : 1;
    }
    /// Number of spins in |1>, i.e. flips away from the ground state.
    std::size_t count() const noexcept;
    /// Number of positions where the two states differ.
    std::size_t distance(const BasisState &other) const;
    /// Integer value of the bitstring. Throws if any bit above 63 is set.
    std::uint64_t to_index() const;
    std::string to_string() const;

    std::size_t hash() const noexcept;

    friend bool operator==(const BasisState &a, const BasisState &b) = default;
    friend std::strong_ordering operator<=>(const BasisState &a, const BasisState &b) noexcept;

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace spinchain

template <>
struct std::hash<spinchain::BasisState> {
    std::size_t operator()(const spinchain::BasisState &s) const noexcept {
        return s.hash();
    }
};

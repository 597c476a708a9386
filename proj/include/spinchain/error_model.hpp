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
#include <iosfwd>
#include <optional>
#include <vector>

#include "spinchain/chain.hpp"

namespace spinchain {

/// Probability (Omega/lambda)^2 sin^2(lambda tau / 2) of a near-resonant
/// transition, lambda = sqrt(Omega^2 + Delta^2).
double epsilon(double rabi, double detuning, double duration);

/// mu = (Omega / 2 delta omega)^2.
double mu_base(double rabi, double larmor_spacing);

/// mu_k = mu * sum_{k' != k} 1 / (k - k')^2 over a chain of n spins.
double mu_k(double rabi, double larmor_spacing, std::size_t k, std::size_t n_qubits);

/// First-order probability of exciting a spin `distance` sites away from the
/// resonant one: (Omega/2)^2 / (distance * delta omega)^2.
double nonresonant_leak(double rabi, double larmor_spacing, std::size_t distance);

struct ErrorBudget {
    std::size_t n_qubits = 0;
    std::size_t m_pulses = 0;
    double epsilon = 0.0;
    double mu = 0.0;
    std::vector<double> mu_k;  // indexed by spin
    double total = 0.0;        // P
};

/// Error of the equal-epsilon Control-Not protocol (Omega_3 = 2 Omega):
///
///   P = 1 - 1/2 (1-mu_{N-1})(1-mu_{N-2}-e)(1-4mu_{N-2}-e)(1-mu_0-e)
///             prod_{i=1}^{N-3} (1-mu_i-e)^2
///         - 1/2 (1-mu_{N-2})(1-4mu_{N-2}) prod_{i=0}^{N-3} (1-mu_i)^2
///
/// with e the near-resonant probability of a pi-pulse at Delta = 2J.
ErrorBudget total_error(const ChainConfig &cfg, double rabi);

/// The same expression for given epsilon and mu_k values (mu_k.size() = N).
double total_error(double eps, const std::vector<double> &mu_k);

/// |C_0|^2 to first order in epsilon: (1 - M epsilon) / 2.
double first_order_ground_probability(std::size_t m_pulses, double eps);

/// `count` points from lo to hi, equally spaced in log.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);
/// `count` points from lo to hi, equally spaced.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// A maximal run of accepted Omega cells at one delta omega.
struct AcceptedInterval {
    double larmor_spacing = 0.0;
    double rabi_lo = 0.0;
    double rabi_hi = 0.0;
    /// 2 pi k point inside the interval, or the nearest one if none is.
    int anchor_k = 0;
    double anchor_rabi = 0.0;
};

/// total_error on a (delta omega, Omega) grid. Cells are stored with Omega
/// varying fastest.
struct RegionMap {
    std::size_t n_qubits = 0;
    double threshold = 0.0;  // P_0
    std::vector<double> spacings;
    std::vector<double> rabis;
    std::vector<double> error;
    std::vector<char> accepted;
    std::vector<AcceptedInterval> intervals;

    std::size_t index(std::size_t spacing_index, std::size_t rabi_index) const noexcept {
        return spacing_index * rabis.size() + rabi_index;
    }
    std::size_t accepted_count() const;
    /// Accepted cells at one delta omega times the Omega grid step.
    double accepted_width(std::size_t spacing_index) const;
    /// Lowest delta omega index with an accepted cell.
    std::optional<std::size_t> first_accepted_row() const;
};

/// Evaluates the grid with `workers` threads; the result does not depend on
/// the worker count.
RegionMap sweep_threshold_regions(const ChainConfig &cfg, const std::vector<double> &spacings,
                                  const std::vector<double> &rabis, double threshold, std::size_t workers = 1);

/// 2 pi k index of the Omega^[k] (Delta = 2J) nearest to rabi.
int nearest_two_pi_k(double rabi, double coupling);

/// spacing,rabi,error,accepted
void write_region_csv(std::ostream &out, const RegionMap &map);
/// spacing,rabi_lo,rabi_hi,anchor_k,anchor_rabi
void write_interval_csv(std::ostream &out, const RegionMap &map);

}  // namespace spinchain

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
#include <string>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/run_report.hpp"

namespace spinchain {

struct Band {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
    /// Counts per log10 bin between min and max.
    std::vector<std::size_t> histogram;
};

/// Records split into probability bands, highest band first.
struct BandSummary {
    std::vector<std::size_t> assignment;  // band of each input, same order
    std::vector<Band> bands;
    /// Largest gap between consecutive log10 probabilities.
    double largest_gap_decades = 0.0;
};

/// Sorts log10 probabilities and splits at the largest gap when it spans at
/// least min_gap_decades; otherwise everything is one band.
BandSummary band_classify(const std::vector<double> &probabilities, double min_gap_decades = 1.0,
                          std::size_t histogram_bins = 10);
BandSummary band_classify(const std::vector<UnwantedRecord> &records, double min_gap_decades = 1.0,
                          std::size_t histogram_bins = 10);

enum class EnergyClass { Low, Intermediate, High };

std::string energy_class_name(EnergyClass c);

struct ExcitationProfile {
    std::string bits;  // spin N-1 first
    std::size_t flips = 0;
    double relative_energy = 0.0;  // E - E(ground)
    EnergyClass energy_class = EnergyClass::Low;
};

/// Profile of one state; the class uses the given tercile bounds of
/// relative energy.
ExcitationProfile excitation_profile(const BasisState &state, const ChainConfig &cfg, double lower_tercile,
                                     double upper_tercile);

/// Profiles of every record, classified by the terciles of their relative
/// energies.
std::vector<ExcitationProfile> excitation_profiles(const std::vector<UnwantedRecord> &records,
                                                   const ChainConfig &cfg);

struct PhaseReport {
    std::complex<double> boundary;
    std::complex<double> center;
    /// |arg(C_boundary / C_center)| in radians.
    double deviation = 0.0;
    /// Phase of C_0 at the center, unwrapped.
    double reference_phase = 0.0;
    /// deviation / |reference_phase|.
    double relative = 0.0;
};

/// Compares C_0 of two runs of one protocol at different Omega. Throws
/// Error(InvalidArgument) if either |C_0|^2 is below the cutoff.
PhaseReport phase_report(std::complex<double> boundary, std::complex<double> center, double reference_phase,
                         double cutoff);
PhaseReport phase_report(const RunReport &boundary, const RunReport &center, const BasisState &state,
                         double reference_phase);

}  // namespace spinchain

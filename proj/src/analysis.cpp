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


#include "spinchain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinchain/error.hpp"

namespace spinchain {

namespace {

double median_of_sorted(const std::vector<double> &v) {
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Band make_band(std::vector<double> probs, std::size_t bins) {
    std::sort(probs.begin(), probs.end());
    Band b;
    b.count = probs.size();
    b.min = probs.front();
    b.max = probs.back();
    b.median = median_of_sorted(probs);
    b.histogram.assign(std::max<std::size_t>(bins, 1), 0);
    const double lo = std::log10(b.min);
    const double span = std::log10(b.max) - lo;
    for (double p : probs) {
        std::size_t bin = 0;
        if (span > 0.0) {
            bin = static_cast<std::size_t>((std::log10(p) - lo) / span * static_cast<double>(b.histogram.size()));
            bin = std::min(bin, b.histogram.size() - 1);
        }
        ++b.histogram[bin];
    }
    return b;
}

}  // namespace

BandSummary band_classify(const std::vector<double> &probabilities, double min_gap_decades,
                          std::size_t histogram_bins) {
    if (probabilities.empty()) {
        throw Error(ErrorCode::InvalidArgument, "band classification needs at least one probability");
    }
    for (double p : probabilities) {
        if (!(p > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "band classification needs positive probabilities");
        }
    }
    std::vector<double> logs;
    logs.reserve(probabilities.size());
    for (double p : probabilities) {
        logs.push_back(std::log10(p));
    }
    std::sort(logs.begin(), logs.end());
    BandSummary out;
    double split = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < logs.size(); ++i) {
        const double gap = logs[i] - logs[i - 1];
        if (gap > out.largest_gap_decades) {
            out.largest_gap_decades = gap;
            split = logs[i];
        }
    }
    const bool two = out.largest_gap_decades >= min_gap_decades;
    std::vector<double> upper;
    std::vector<double> lower;
    out.assignment.reserve(probabilities.size());
    for (double p : probabilities) {
        if (!two || std::log10(p) >= split) {
            out.assignment.push_back(0);
            upper.push_back(p);
        } else {
            out.assignment.push_back(1);
            lower.push_back(p);
        }
    }
    out.bands.push_back(make_band(std::move(upper), histogram_bins));
    if (two) {
        out.bands.push_back(make_band(std::move(lower), histogram_bins));
    }
    return out;
}

BandSummary band_classify(const std::vector<UnwantedRecord> &records, double min_gap_decades,
                          std::size_t histogram_bins) {
    std::vector<double> probs;
    probs.reserve(records.size());
    for (const auto &r : records) {
        probs.push_back(r.probability);
    }
    return band_classify(probs, min_gap_decades, histogram_bins);
}

std::string energy_class_name(EnergyClass c) {
    switch (c) {
        case EnergyClass::Low:
            return "low";
        case EnergyClass::Intermediate:
            return "intermediate";
        case EnergyClass::High:
            return "high";
    }
    return "unknown";
}

ExcitationProfile excitation_profile(const BasisState &state, const ChainConfig &cfg, double lower_tercile,
                                     double upper_tercile) {
    ExcitationProfile p;
    p.bits = state.to_string();
    p.flips = state.count();
    p.relative_energy = basis_energy(state, cfg) - basis_energy(BasisState(cfg.n_qubits), cfg);
    if (p.relative_energy < lower_tercile) {
        p.energy_class = EnergyClass::Low;
    } else if (p.relative_energy >= upper_tercile) {
        p.energy_class = EnergyClass::High;
    } else {
        p.energy_class = EnergyClass::Intermediate;
    }
    return p;
}

std::vector<ExcitationProfile> excitation_profiles(const std::vector<UnwantedRecord> &records,
                                                   const ChainConfig &cfg) {
    if (records.empty()) {
        return {};
    }
    const double ground = basis_energy(BasisState(cfg.n_qubits), cfg);
    std::vector<double> rel;
    rel.reserve(records.size());
    for (const auto &r : records) {
        rel.push_back(basis_energy(r.state, cfg) - ground);
    }
    std::vector<double> sorted = rel;
    std::sort(sorted.begin(), sorted.end());
    const double lower = sorted[sorted.size() / 3];
    const double upper = sorted[2 * sorted.size() / 3];
    std::vector<ExcitationProfile> out;
    out.reserve(records.size());
    for (const auto &r : records) {
        out.push_back(excitation_profile(r.state, cfg, lower, upper));
    }
    return out;
}

PhaseReport phase_report(std::complex<double> boundary, std::complex<double> center, double reference_phase,
                         double cutoff) {
    if (std::norm(boundary) < cutoff || std::norm(center) < cutoff) {
        throw Error(ErrorCode::InvalidArgument, "amplitude below the cutoff, its phase is not reported");
    }
    if (reference_phase == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "reference phase must be nonzero");
    }
    PhaseReport r;
    r.boundary = boundary;
    r.center = center;
    r.deviation = std::abs(std::arg(boundary / center));
    r.reference_phase = reference_phase;
    r.relative = r.deviation / std::abs(reference_phase);
    return r;
}

PhaseReport phase_report(const RunReport &boundary, const RunReport &center, const BasisState &state,
                         double reference_phase) {
    return phase_report(boundary.amplitude(state), center.amplitude(state), reference_phase,
                        std::max(boundary.cutoff, center.cutoff));
}

}  // namespace spinchain

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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "spinchain/basis_state.hpp"
#include "spinchain/chain.hpp"
#include "spinchain/pulse.hpp"
#include "spinchain/sparse_state.hpp"

namespace spinchain {

/// A basis state outside the intended result whose probability is at or
/// above the cutoff at the end of the run.
struct UnwantedRecord {
    BasisState state;
    double probability = 0.0;
    /// First pulse index (0-based, the pi/2-pulse is 0) after which the
    /// probability reached the cutoff.
    std::size_t generation_pulse = 0;
    double energy = 0.0;  // H0 energy
    std::size_t flips = 0;
};

/// Population summary after one pulse.
struct TraceRow {
    std::size_t pulse = 0;
    std::string label;
    double time = 0.0;
    std::size_t tracked = 0;
    double norm = 0.0;
    double leaked = 0.0;
    std::vector<double> wanted_probabilities;
    std::size_t unwanted_above_cutoff = 0;
    /// States that were generated earlier and fell below the cutoff here.
    std::size_t dips = 0;
};

struct Provenance {
    std::string engine;
    std::string config_hash;
    std::uint64_t seed = 0;
    bool doubled_probabilities = false;
};

struct RunReport {
    SparseState final_state;
    std::vector<BasisState> wanted;
    /// Sorted by generation pulse, then basis order.
    std::vector<UnwantedRecord> unwanted;
    double leaked = 0.0;
    double cutoff = 0.0;
    std::vector<TraceRow> trace;
    Provenance provenance;

    /// Probability as reported: raw, or doubled when the flag is set.
    double reported(double probability) const noexcept {
        return provenance.doubled_probabilities ? 2.0 * probability : probability;
    }
    std::complex<double> amplitude(const BasisState &state) const {
        return final_state.amplitude(state);
    }
    /// Total probability outside the wanted states, over all tracked states.
    double unwanted_probability() const;
};

/// Bookkeeping shared by the engines: first-crossing generation indices, the
/// optional trace and the final record list.
class RunTracker {
  public:
    RunTracker(const ChainConfig &cfg, std::vector<BasisState> wanted, bool trace);

    /// Call after every pulse with the post-pulse state.
    void observe(std::size_t pulse_index, const Pulse &pulse, const SparseState &state);
    RunReport finish(SparseState final_state, Provenance provenance) const;

  private:
    bool is_wanted(const BasisState &s) const;

    ChainConfig cfg_;
    std::vector<BasisState> wanted_;
    bool trace_;
    std::unordered_map<BasisState, std::size_t> first_crossing_;
    std::unordered_map<BasisState, bool> above_;
    std::vector<TraceRow> rows_;
};

/// Structured-text form. Doubles are written with round-trip precision so a
/// reloaded report is bit-identical.
std::string report_to_json(const RunReport &report);
RunReport report_from_json(const std::string &text);

/// state,probability,generation_pulse,energy,flips
void write_unwanted_csv(std::ostream &out, const RunReport &report);
/// pulse,label,time,tracked,norm,leaked,wanted_0,...,unwanted_above_cutoff,dips
void write_trace_csv(std::ostream &out, const RunReport &report);
/// state,probability,re,im over every tracked state.
void write_amplitudes_csv(std::ostream &out, const RunReport &report);

/// Shortest decimal that reloads to the same double.
std::string format_double(double v);

}  // namespace spinchain

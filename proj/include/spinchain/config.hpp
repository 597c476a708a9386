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
#include <optional>
#include <string>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/pulse.hpp"

namespace spinchain {

inline constexpr int kConfigSchemaVersion = 1;

enum class EngineKind { Perturbative, Exact, Classical };

EngineKind engine_from_name(const std::string &name);
std::string engine_name(EngineKind kind);

struct JitterSpec {
    std::size_t first = 0;
    std::size_t last = 0;
    double bound = 0.0;
};

struct ProtocolSpec {
    std::string gate = "cn";
    std::optional<double> rabi;
    std::optional<int> k;
    bool equal_epsilon = false;
    /// Protocol document to load instead of designing one.
    std::optional<std::string> file;
    std::optional<JitterSpec> jitter;
};

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

struct SweepSpec {
    GridSpec spacing{10.0, 1e6, 61};
    GridSpec rabi{0.1, 0.2, 201};
    std::vector<double> thresholds{1e-5};
    /// Chain sizes to sweep; empty means chain.n_qubits only.
    std::vector<std::size_t> n_qubits;
};

struct CompareSpec {
    std::vector<double> spacings;
    std::vector<double> rabis;
};

/// One run-config document. Parsing rejects unknown keys at every level.
struct RunConfig {
    int schema_version = kConfigSchemaVersion;
    ChainConfig chain;
    ProtocolSpec protocol;
    /// "ground" or a bitstring with spin N-1 first.
    std::string initial = "ground";
    EngineKind engine = EngineKind::Perturbative;
    std::size_t workers = 1;
    std::size_t exact_cap = 14;
    std::size_t classical_cap = 8;
    double phase_step = 0.02;
    std::string out_dir = "out";
    bool trace = false;
    bool doubled_probabilities = false;
    std::uint64_t seed = 0;
    std::optional<SweepSpec> sweep;
    std::optional<CompareSpec> compare;
};

/// Throws Error(MalformedConfig) with the offending key in the message.
RunConfig parse_run_config(const std::string &text);
std::string run_config_to_json(const RunConfig &config);
RunConfig load_run_config(const std::string &path);

/// FNV-1a of the canonical JSON form, as 16 hex digits.
std::string config_hash(const RunConfig &config);

/// The protocol the config describes: loaded from file or designed, then
/// jittered if requested.
Protocol build_protocol(const RunConfig &config);
BasisState initial_state(const RunConfig &config);

}  // namespace spinchain

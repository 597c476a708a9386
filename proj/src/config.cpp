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


#include "spinchain/config.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "spinchain/error.hpp"
#include "spinchain/pulse_design.hpp"

namespace spinchain {

using nlohmann::json;

EngineKind engine_from_name(const std::string &name) {
    if (name == "perturbative") {
        return EngineKind::Perturbative;
    }
    if (name == "exact") {
        return EngineKind::Exact;
    }
    if (name == "classical") {
        return EngineKind::Classical;
    }
    throw Error(ErrorCode::MalformedConfig, "unknown engine '" + name + "'");
}

std::string engine_name(EngineKind kind) {
    switch (kind) {
        case EngineKind::Perturbative:
            return "perturbative";
        case EngineKind::Exact:
            return "exact";
        case EngineKind::Classical:
            return "classical";
    }
    return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string &where, const std::string &what) {
    throw Error(ErrorCode::MalformedConfig, where + ": " + what);
}

const json &object_at(const json &j, const std::string &where, std::initializer_list<const char *> allowed) {
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto &item : j.items()) {
        bool known = false;
        for (const char *a : allowed) {
            known = known || item.key() == a;
        }
        if (!known) {
            fail(where, "unknown key '" + item.key() + "'");
        }
    }
    return j;
}

template <class T>
T get(const json &j, const std::string &where, const char *key) {
    if (!j.contains(key)) {
        fail(where, std::string("missing key '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        fail(where + "." + key, "wrong type");
    }
}

template <class T>
T get_or(const json &j, const std::string &where, const char *key, T fallback) {
    return j.contains(key) ? get<T>(j, where, key) : fallback;
}

GridSpec parse_grid(const json &j, const std::string &where) {
    object_at(j, where, {"min", "max", "count"});
    GridSpec g;
    g.min = get<double>(j, where, "min");
    g.max = get<double>(j, where, "max");
    g.count = get<std::size_t>(j, where, "count");
    if (g.count == 0 || !(g.max >= g.min)) {
        fail(where, "grid needs count > 0 and max >= min");
    }
    return g;
}

json grid_json(const GridSpec &g) {
    return {{"min", g.min}, {"max", g.max}, {"count", g.count}};
}

}  // namespace

RunConfig parse_run_config(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::MalformedConfig, std::string("config is not valid JSON: ") + e.what());
    }
    object_at(j, "config",
              {"schema_version", "chain", "protocol", "initial", "engine", "output", "seed", "sweep", "compare"});
    RunConfig c;
    c.schema_version = get<int>(j, "config", "schema_version");
    if (c.schema_version != kConfigSchemaVersion) {
        fail("config.schema_version", "unsupported version " + std::to_string(c.schema_version));
    }

    if (!j.contains("chain")) {
        fail("config", "missing key 'chain'");
    }
    const json &jc = object_at(j.at("chain"), "chain",
                               {"n_qubits", "coupling", "larmor_spacing", "base_larmor", "cutoff"});
    c.chain.n_qubits = get<std::size_t>(jc, "chain", "n_qubits");
    c.chain.coupling = get_or<double>(jc, "chain", "coupling", 1.0);
    c.chain.larmor_spacing = get<double>(jc, "chain", "larmor_spacing");
    c.chain.base_larmor = get_or<double>(jc, "chain", "base_larmor", 10.0 * c.chain.larmor_spacing);
    c.chain.cutoff = get_or<double>(jc, "chain", "cutoff", 1e-6);
    try {
        c.chain.validate();
    } catch (const Error &e) {
        fail("chain", e.what());
    }

    if (j.contains("protocol")) {
        const json &jp = object_at(j.at("protocol"), "protocol", {"gate", "rabi", "k", "equal_epsilon", "file", "jitter"});
        c.protocol.gate = get_or<std::string>(jp, "protocol", "gate", "cn");
        if (c.protocol.gate != "cn") {
            fail("protocol.gate", "only 'cn' is supported");
        }
        if (jp.contains("rabi")) {
            c.protocol.rabi = get<double>(jp, "protocol", "rabi");
        }
        if (jp.contains("k")) {
            c.protocol.k = get<int>(jp, "protocol", "k");
        }
        if (c.protocol.rabi && c.protocol.k) {
            fail("protocol", "give either 'rabi' or 'k', not both");
        }
        c.protocol.equal_epsilon = get_or<bool>(jp, "protocol", "equal_epsilon", false);
        if (jp.contains("file")) {
            c.protocol.file = get<std::string>(jp, "protocol", "file");
        }
        if (jp.contains("jitter")) {
            const json &jj = object_at(jp.at("jitter"), "protocol.jitter", {"first", "last", "bound"});
            c.protocol.jitter = JitterSpec{get<std::size_t>(jj, "protocol.jitter", "first"),
                                           get<std::size_t>(jj, "protocol.jitter", "last"),
                                           get<double>(jj, "protocol.jitter", "bound")};
        }
    }

    c.initial = get_or<std::string>(j, "config", "initial", "ground");
    if (c.initial != "ground" && c.initial.size() != c.chain.n_qubits) {
        fail("config.initial", "expected 'ground' or a bitstring of length " + std::to_string(c.chain.n_qubits));
    }

    if (j.contains("engine")) {
        const json &je =
            object_at(j.at("engine"), "engine", {"name", "workers", "exact_cap", "classical_cap", "phase_step"});
        c.engine = engine_from_name(get_or<std::string>(je, "engine", "name", "perturbative"));
        c.workers = get_or<std::size_t>(je, "engine", "workers", 1);
        c.exact_cap = get_or<std::size_t>(je, "engine", "exact_cap", c.exact_cap);
        c.classical_cap = get_or<std::size_t>(je, "engine", "classical_cap", c.classical_cap);
        c.phase_step = get_or<double>(je, "engine", "phase_step", c.phase_step);
        if (c.workers == 0 || !(c.phase_step > 0.0)) {
            fail("engine", "workers and phase_step must be positive");
        }
    }

    if (j.contains("output")) {
        const json &jo = object_at(j.at("output"), "output", {"dir", "trace", "doubled_probabilities"});
        c.out_dir = get_or<std::string>(jo, "output", "dir", c.out_dir);
        c.trace = get_or<bool>(jo, "output", "trace", false);
        c.doubled_probabilities = get_or<bool>(jo, "output", "doubled_probabilities", false);
    }
    c.seed = get_or<std::uint64_t>(j, "config", "seed", 0);

    if (j.contains("sweep")) {
        const json &js = object_at(j.at("sweep"), "sweep", {"spacing", "rabi", "thresholds", "n_qubits"});
        SweepSpec s;
        if (js.contains("spacing")) {
            s.spacing = parse_grid(js.at("spacing"), "sweep.spacing");
        }
        if (js.contains("rabi")) {
            s.rabi = parse_grid(js.at("rabi"), "sweep.rabi");
        }
        s.thresholds = get_or<std::vector<double>>(js, "sweep", "thresholds", s.thresholds);
        s.n_qubits = get_or<std::vector<std::size_t>>(js, "sweep", "n_qubits", {});
        if (s.thresholds.empty()) {
            fail("sweep.thresholds", "need at least one threshold");
        }
        c.sweep = s;
    }
    if (j.contains("compare")) {
        const json &jm = object_at(j.at("compare"), "compare", {"spacings", "rabis"});
        CompareSpec m;
        m.spacings = get<std::vector<double>>(jm, "compare", "spacings");
        m.rabis = get<std::vector<double>>(jm, "compare", "rabis");
        c.compare = m;
    }
    return c;
}

std::string run_config_to_json(const RunConfig &c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["chain"] = {{"n_qubits", c.chain.n_qubits},
                  {"coupling", c.chain.coupling},
                  {"larmor_spacing", c.chain.larmor_spacing},
                  {"base_larmor", c.chain.base_larmor},
                  {"cutoff", c.chain.cutoff}};
    json jp{{"gate", c.protocol.gate}, {"equal_epsilon", c.protocol.equal_epsilon}};
    if (c.protocol.rabi) {
        jp["rabi"] = *c.protocol.rabi;
    }
    if (c.protocol.k) {
        jp["k"] = *c.protocol.k;
    }
    if (c.protocol.file) {
        jp["file"] = *c.protocol.file;
    }
    if (c.protocol.jitter) {
        jp["jitter"] = {{"first", c.protocol.jitter->first},
                        {"last", c.protocol.jitter->last},
                        {"bound", c.protocol.jitter->bound}};
    }
    j["protocol"] = jp;
    j["initial"] = c.initial;
    j["engine"] = {{"name", engine_name(c.engine)},
                   {"workers", c.workers},
                   {"exact_cap", c.exact_cap},
                   {"classical_cap", c.classical_cap},
                   {"phase_step", c.phase_step}};
    j["output"] = {{"dir", c.out_dir}, {"trace", c.trace}, {"doubled_probabilities", c.doubled_probabilities}};
    j["seed"] = c.seed;
    if (c.sweep) {
        j["sweep"] = {{"spacing", grid_json(c.sweep->spacing)},
                      {"rabi", grid_json(c.sweep->rabi)},
                      {"thresholds", c.sweep->thresholds},
                      {"n_qubits", c.sweep->n_qubits}};
    }
    if (c.compare) {
        j["compare"] = {{"spacings", c.compare->spacings}, {"rabis", c.compare->rabis}};
    }
    return j.dump(2);
}

RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot read config '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::string config_hash(const RunConfig &config) {
    const std::string text = json::parse(run_config_to_json(config)).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Protocol build_protocol(const RunConfig &config) {
    Protocol proto;
    if (config.protocol.file) {
        std::ifstream in(*config.protocol.file);
        if (!in) {
            throw Error(ErrorCode::Io, "cannot read protocol '" + *config.protocol.file + "'");
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        proto = protocol_from_json(ss.str());
    } else if (config.protocol.rabi) {
        proto = build_cn_protocol(config.chain, RabiChoice::rabi(*config.protocol.rabi), config.protocol.equal_epsilon);
    } else if (config.protocol.k) {
        proto = build_cn_protocol(config.chain, RabiChoice::two_pi_k(*config.protocol.k), config.protocol.equal_epsilon);
    } else {
        throw Error(ErrorCode::MalformedConfig, "protocol: give 'rabi', 'k' or 'file'");
    }
    if (config.protocol.jitter) {
        const auto &jt = *config.protocol.jitter;
        proto = perturb_protocol(proto, jt.first, jt.last, jt.bound, config.seed);
    }
    return proto;
}

BasisState initial_state(const RunConfig &config) {
    if (config.initial == "ground") {
        return BasisState(config.chain.n_qubits);
    }
    try {
        return BasisState::from_string(config.initial);
    } catch (const Error &e) {
        throw Error(ErrorCode::MalformedConfig, std::string("initial: ") + e.what());
    }
}

}  // namespace spinchain

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


#include "spinchain/pulse_design.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "spinchain/error.hpp"

namespace spinchain {

using nlohmann::json;

double rabi_for_2pik(double detuning, int k, PulseKind kind) {
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "2 pi k index must be at least 1");
    }
    if (detuning == 0.0 || !std::isfinite(detuning)) {
        throw Error(ErrorCode::InvalidArgument, "2 pi k condition needs a nonzero detuning");
    }
    const double kk = static_cast<double>(k);
    const double m = kind == PulseKind::Pi ? 4.0 : 16.0;
    return std::abs(detuning) / std::sqrt(m * kk * kk - 1.0);
}

double RabiChoice::resolve(const ChainConfig &cfg) const {
    if (const int *k = std::get_if<int>(&value)) {
        return rabi_for_2pik(2.0 * cfg.coupling, *k, PulseKind::Pi);
    }
    const double omega = std::get<double>(value);
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw Error(ErrorCode::InvalidArgument, "Rabi frequency must be positive");
    }
    return omega;
}

Protocol build_cn_protocol(const ChainConfig &cfg, RabiChoice rabi, bool equal_epsilon) {
    cfg.validate();
    const std::size_t n = cfg.n_qubits;
    if (n < 3) {
        throw Error(ErrorCode::InvalidArgument, "Control-Not protocol needs at least 3 qubits");
    }
    const double omega = rabi.resolve(cfg);
    const BasisState ground(n);

    Protocol proto;
    proto.gate = "CN(" + std::to_string(n - 1) + ",0)";

    Pulse half;
    half.frequency = transition_frequency(ground, n - 1, cfg);
    half.rabi = omega;
    half.duration = std::numbers::pi / (2.0 * omega);
    half.label = "pi/2";
    proto.pulses.push_back(half);
    proto.target_spins.push_back(n - 1);

    // Spin N-2 once, then for j = N-3 .. 0: flip j up and j+1 back down.
    std::vector<std::size_t> flips{n - 2};
    for (std::size_t j = n - 2; j-- > 0;) {
        flips.push_back(j);
        flips.push_back(j + 1);
    }

    BasisState current = ground.flipped(n - 1);
    proto.path_start = current;
    for (std::size_t i = 0; i < flips.size(); ++i) {
        const std::size_t number = i + 1;
        Pulse p;
        p.frequency = transition_frequency(current, flips[i], cfg);
        p.rabi = (equal_epsilon && number == 3) ? 2.0 * omega : omega;
        p.duration = std::numbers::pi / p.rabi;
        p.label = "pi-" + std::to_string(number);
        proto.pulses.push_back(p);
        proto.target_spins.push_back(flips[i]);
        current.flip(flips[i]);
    }

    for (const auto &p : proto.pulses) {
        proto.ground_detunings.push_back(classify_transition(ground, p.frequency, cfg).detuning);
    }
    proto.wanted = {ground, current};
    return proto;
}

AnalyticFinalState analytic_final_state(std::size_t n_qubits, int k, std::size_t m_pulses) {
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "2 pi k index must be at least 1");
    }
    const double kk = static_cast<double>(k);
    const double m = static_cast<double>(m_pulses);
    const double root = std::sqrt(4.0 * kk * kk - 1.0);
    AnalyticFinalState s;
    s.ground_phase = std::numbers::pi * kk * m - std::numbers::pi * m * root / 2.0;
    // Reduce the two terms separately before adding: each is an exact
    // multiple of pi or close to one, which keeps the sum accurate.
    const double sign = ((static_cast<std::uint64_t>(k) * m_pulses) % 2 == 0) ? 1.0 : -1.0;
    const double rotation = std::remainder(std::numbers::pi * m * root / 2.0, 2.0 * std::numbers::pi);
    s.ground = sign * std::polar(1.0, -rotation) / std::numbers::sqrt2;
    s.target = ((n_qubits - 1) % 2 == 0 ? 1.0 : -1.0) / std::numbers::sqrt2;
    return s;
}

Protocol perturb_protocol(const Protocol &protocol, std::size_t first, std::size_t last, double bound,
                          std::uint64_t seed) {
    if (!(bound >= 0.0) || !std::isfinite(bound)) {
        throw Error(ErrorCode::InvalidArgument, "jitter bound must be non-negative");
    }
    if (first > last || last >= protocol.pulses.size()) {
        throw Error(ErrorCode::InvalidArgument, "jitter range " + std::to_string(first) + ".." + std::to_string(last) +
                                                    " is outside the protocol");
    }
    Protocol out = protocol;
    std::mt19937_64 rng(seed);
    for (std::size_t i = first; i <= last; ++i) {
        // Portable uniform draw in (0, 1); std::uniform_real_distribution is
        // implementation-defined.
        double u = 0.0;
        while (u == 0.0) {
            u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }
        const double eta = bound * (2.0 * u - 1.0);
        Pulse &p = out.pulses[i];
        p.rabi += eta;
        if (!(p.rabi > 0.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "jitter drove the Rabi frequency of pulse " + std::to_string(i) + " to " + std::to_string(p.rabi));
        }
    }
    return out;
}

std::string protocol_to_json(const Protocol &protocol) {
    json j;
    j["gate"] = protocol.gate;
    j["path_start"] = protocol.path_start.to_string();
    j["wanted"] = json::array();
    for (const auto &w : protocol.wanted) {
        j["wanted"].push_back(w.to_string());
    }
    j["pulses"] = json::array();
    for (std::size_t i = 0; i < protocol.pulses.size(); ++i) {
        const Pulse &p = protocol.pulses[i];
        json jp{{"frequency", p.frequency},
                {"rabi", p.rabi},
                {"duration", p.duration},
                {"phase", p.phase},
                {"label", p.label}};
        if (i < protocol.target_spins.size() && protocol.target_spins[i]) {
            jp["target_spin"] = *protocol.target_spins[i];
        }
        if (i < protocol.ground_detunings.size()) {
            jp["ground_detuning"] = protocol.ground_detunings[i];
        }
        j["pulses"].push_back(std::move(jp));
    }
    return j.dump(2);
}

Protocol protocol_from_json(const std::string &text) {
    Protocol proto;
    try {
        const json j = json::parse(text);
        proto.gate = j.value("gate", std::string{});
        proto.path_start = BasisState::from_string(j.value("path_start", std::string{}));
        for (const auto &w : j.value("wanted", json::array())) {
            proto.wanted.push_back(BasisState::from_string(w.get<std::string>()));
        }
        bool all_detunings = true;
        for (const auto &jp : j.at("pulses")) {
            Pulse p;
            p.frequency = jp.at("frequency").get<double>();
            p.rabi = jp.at("rabi").get<double>();
            p.duration = jp.at("duration").get<double>();
            p.phase = jp.value("phase", 0.0);
            p.label = jp.value("label", std::string{});
            p.validate();
            proto.pulses.push_back(p);
            if (jp.contains("target_spin")) {
                proto.target_spins.emplace_back(jp.at("target_spin").get<std::size_t>());
            } else {
                proto.target_spins.emplace_back(std::nullopt);
            }
            if (jp.contains("ground_detuning")) {
                proto.ground_detunings.push_back(jp.at("ground_detuning").get<double>());
            } else {
                all_detunings = false;
            }
        }
        if (!all_detunings) {
            proto.ground_detunings.clear();
        }
    } catch (const json::exception &e) {
        throw Error(ErrorCode::MalformedConfig, std::string("bad protocol document: ") + e.what());
    }
    return proto;
}

}  // namespace spinchain

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


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinchain/error.hpp"
#include "spinchain/pulse_design.hpp"

using namespace spinchain;

TEST_CASE("2 pi k Rabi frequencies") {
    CHECK(rabi_for_2pik(2.0, 7, PulseKind::Pi) == doctest::Approx(2.0 / std::sqrt(195.0)).epsilon(1e-15));
    CHECK(rabi_for_2pik(2.0, 7, PulseKind::Pi) == doctest::Approx(0.1432).epsilon(1e-3));
    CHECK(rabi_for_2pik(1.0, 1, PulseKind::Pi) == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(rabi_for_2pik(-1.0, 1, PulseKind::HalfPi) == doctest::Approx(1.0 / std::sqrt(15.0)));
    CHECK(rabi_for_2pik(2.0, 10, PulseKind::Pi) == doctest::Approx(0.1).epsilon(2e-3));
    CHECK_THROWS_AS(rabi_for_2pik(0.0, 1, PulseKind::Pi), Error);
    CHECK_THROWS_AS(rabi_for_2pik(2.0, 0, PulseKind::Pi), Error);
    // A pi/2-pulse at index k meets the pi-pulse condition at 2k.
    for (int k = 1; k < 20; ++k) {
        CHECK(rabi_for_2pik(2.0, k, PulseKind::HalfPi) == doctest::Approx(rabi_for_2pik(2.0, 2 * k, PulseKind::Pi)));
        // lambda tau = 2 pi k, checked directly.
        const double o = rabi_for_2pik(2.0, k, PulseKind::Pi);
        CHECK(std::hypot(o, 2.0) * std::numbers::pi / o == doctest::Approx(2 * std::numbers::pi * k));
    }
}

TEST_CASE("Control-Not schedule") {
    for (std::size_t n : {3u, 4u, 7u, 200u}) {
        const auto cfg = ChainConfig::make(n, 100.0);
        const auto proto = build_cn_protocol(cfg, RabiChoice::rabi(0.1), true);
        const std::size_t m = cn_pi_pulse_count(n);
        CHECK(m == 2 * n - 3);
        REQUIRE(proto.size() == m + 1);
        CHECK(proto.pulses[0].rabi * proto.pulses[0].duration == doctest::Approx(std::numbers::pi / 2));
        CHECK(proto.pulses[1].frequency == cfg.larmor(n - 2));
        CHECK(proto.pulses[2].frequency == cfg.larmor(n - 3) - (n == 3 ? 1.0 : 0.0));
        CHECK(proto.pulses[3].frequency == cfg.larmor(n - 2) - 2.0);
        for (std::size_t i = 1; i <= m; ++i) {
            CHECK(proto.pulses[i].area() == doctest::Approx(std::numbers::pi));
            CHECK(proto.pulses[i].rabi == (i == 3 ? 0.2 : 0.1));
            CHECK(proto.ground_detunings[i] == doctest::Approx(i == 3 ? 4.0 : 2.0));
        }
        const auto path = proto.path_states();
        CHECK(path.front() == BasisState(n));
        CHECK(path[1].to_string() == "1" + std::string(n - 1, '0'));
        CHECK(path.back().to_string() == "1" + std::string(n - 2, '0') + "1");
        // Every pulse is exactly resonant with its path transition.
        std::vector<int> flips(n, 0);
        for (std::size_t i = 0; i < proto.size(); ++i) {
            const auto tc = classify_transition(path[i], proto.pulses[i].frequency, cfg);
            CHECK(tc.kind == TransitionKind::Resonant);
            CHECK(tc.spin == *proto.target_spins[i]);
            ++flips[tc.spin];
        }
        CHECK(flips[0] == 1);
        CHECK(flips[n - 1] == 1);
        for (std::size_t k = 1; k + 2 < n; ++k) {
            CHECK(flips[k] == 2);
        }
        CHECK(flips[n - 2] == 2);
    }
    const auto p200 = build_cn_protocol(ChainConfig::make(200, 100.0), RabiChoice::two_pi_k(7), false);
    CHECK(p200.size() == 398);
    CHECK(p200.pulses[3].rabi == p200.pulses[1].rabi);
    CHECK_THROWS_AS(build_cn_protocol(ChainConfig::make(2, 100.0), RabiChoice::rabi(0.1), false), Error);
}

TEST_CASE("analytic final state") {
    for (int k : {1, 3, 8, 50}) {
        for (std::size_t n : {3u, 10u, 200u}) {
            const auto s = analytic_final_state(n, k, cn_pi_pulse_count(n));
            CHECK(std::abs(s.ground) == doctest::Approx(1 / std::numbers::sqrt2));
            CHECK(std::abs(s.target) == doctest::Approx(1 / std::numbers::sqrt2));
            CHECK(std::abs(std::arg(s.ground * std::polar(1.0, -s.ground_phase))) < 1e-9);
        }
    }
    // Per pi-pulse phase increment at k = 1 is pi (1 - sqrt3/2), about 24 degrees.
    const double step = analytic_final_state(10, 1, 1).ground_phase;
    CHECK(step * 180 / std::numbers::pi == doctest::Approx(24.1).epsilon(1e-2));
    // Large k: phase per pulse goes to zero like pi / (8k).
    CHECK(analytic_final_state(10, 1000, 1).ground_phase == doctest::Approx(std::numbers::pi / 8000).epsilon(1e-5));
    CHECK(analytic_final_state(4, 1, 5).target.real() < 0);
    CHECK(analytic_final_state(5, 1, 7).target.real() > 0);
}

TEST_CASE("protocol jitter") {
    const auto cfg = ChainConfig::make(50, 1000.0);
    const auto proto = build_cn_protocol(cfg, RabiChoice::rabi(0.1), false);
    const auto same = perturb_protocol(proto, 10, 40, 0.0, 1);
    for (std::size_t i = 0; i < proto.size(); ++i) {
        CHECK(same.pulses[i].rabi == proto.pulses[i].rabi);
    }
    const auto a = perturb_protocol(proto, 10, 40, 0.05, 42);
    const auto b = perturb_protocol(proto, 10, 40, 0.05, 42);
    const auto c = perturb_protocol(proto, 10, 40, 0.05, 43);
    bool differs = false;
    for (std::size_t i = 0; i < proto.size(); ++i) {
        CHECK(a.pulses[i].rabi == b.pulses[i].rabi);
        CHECK(a.pulses[i].duration == proto.pulses[i].duration);
        const double eta = a.pulses[i].rabi - proto.pulses[i].rabi;
        if (i < 10 || i > 40) {
            CHECK(eta == 0.0);
        } else {
            CHECK(std::abs(eta) < 0.05);
        }
        differs = differs || a.pulses[i].rabi != c.pulses[i].rabi;
    }
    CHECK(differs);
    CHECK_THROWS_AS(perturb_protocol(proto, 10, 40, 0.5, 1), Error);
    CHECK_THROWS_AS(perturb_protocol(proto, 10, 500, 0.01, 1), Error);
}

TEST_CASE("protocol document round-trip") {
    const auto proto = build_cn_protocol(ChainConfig::make(9, 100.0), RabiChoice::two_pi_k(4), true);
    const auto back = protocol_from_json(protocol_to_json(proto));
    CHECK(back.gate == proto.gate);
    CHECK(back.path_start == proto.path_start);
    CHECK(back.wanted == proto.wanted);
    CHECK(back.ground_detunings == proto.ground_detunings);
    REQUIRE(back.size() == proto.size());
    for (std::size_t i = 0; i < proto.size(); ++i) {
        CHECK(back.pulses[i].frequency == proto.pulses[i].frequency);
        CHECK(back.pulses[i].rabi == proto.pulses[i].rabi);
        CHECK(back.pulses[i].duration == proto.pulses[i].duration);
        CHECK(back.pulses[i].label == proto.pulses[i].label);
        CHECK(back.target_spins[i] == proto.target_spins[i]);
    }
    CHECK_THROWS_AS(protocol_from_json("{\"pulses\": [{\"frequency\": 1}]}"), Error);
}

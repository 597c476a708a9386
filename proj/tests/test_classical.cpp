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
#include <random>

#include "spinchain/classical.hpp"
#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/pulse_design.hpp"

using namespace spinchain;
using cplx = std::complex<double>;

namespace {

Eigen::VectorXcd random_state(Eigen::Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::VectorXcd c(dim);
    for (auto &x : c) {
        x = {g(rng), g(rng)};
    }
    return c.normalized();
}

}  // namespace

TEST_CASE("canonical mapping") {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(4);
    c(0) = 1.0;
    auto s = to_classical(c);
    CHECK(s.x(0) == doctest::Approx(std::numbers::sqrt2));
    CHECK(s.p(0) == 0.0);
    CHECK(s.x(0) * s.x(0) + s.p(0) * s.p(0) == doctest::Approx(kOscillatorNorm));
    CHECK(classical_norm(s) == doctest::Approx(1.0));
    c(0) = cplx{0.0, 1.0};
    s = to_classical(c);
    CHECK(s.x(0) == 0.0);
    CHECK(s.p(0) == doctest::Approx(std::numbers::sqrt2));

    const auto r = random_state(32, 1);
    CHECK((to_quantum(to_classical(r)) - r).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(classical_norm(to_classical(r)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Hamilton's equations are the gradients of H_cl") {
    const auto cfg = ChainConfig::make(3, 10.0);
    const Pulse pulse{cfg.larmor(1) + 1.0, 0.4, 3.0, 0.3, "x"};
    auto s = to_classical(random_state(8, 2), 2.7);
    const auto [dx, dp] = hamilton_rhs(s, cfg, &pulse);
    const double h = 1e-6;
    for (Eigen::Index n = 0; n < 8; ++n) {
        auto a = s, b = s;
        a.p(n) += h;
        b.p(n) -= h;
        const double dhdp = (classical_energy(a, cfg, &pulse) - classical_energy(b, cfg, &pulse)) / (2 * h);
        a = s;
        b = s;
        a.x(n) += h;
        b.x(n) -= h;
        const double dhdx = (classical_energy(a, cfg, &pulse) - classical_energy(b, cfg, &pulse)) / (2 * h);
        CHECK(dx(n) == doctest::Approx(dhdp).epsilon(1e-6));
        CHECK(dp(n) == doctest::Approx(-dhdx).epsilon(1e-6));
    }
}

TEST_CASE("free oscillators rotate at E_n") {
    const auto cfg = ChainConfig::make(3, 10.0);
    const auto c = random_state(8, 3);
    const auto s = to_classical(c);
    const auto out = free_evolution(s, cfg, 12.3);
    CHECK(classical_norm(out) == doctest::Approx(classical_norm(s)).epsilon(1e-15));
    const auto back = to_quantum(out);
    for (Eigen::Index n = 0; n < 8; ++n) {
        const double e = basis_energy(BasisState::from_index(3, static_cast<std::uint64_t>(n)), cfg);
        CHECK(std::abs(back(n) - std::polar(1.0, -e * 12.3) * c(n)) < 1e-13);
    }
    // Interaction amplitudes are constant without a pulse.
    CHECK((to_interaction(out, cfg) - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("one resonant pi-pulse at N=2 matches the exact engine") {
    const auto cfg = ChainConfig::make(2, 10.0);
    const BasisState ground(2);
    const double o = 0.2;
    Protocol proto;
    proto.pulses = {Pulse{transition_frequency(ground, 0, cfg), o, std::numbers::pi / o, 0.0, "pi"}};
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(4);
    c(0) = 1;
    const auto ex = run_protocol_exact(c, proto, cfg);
    const auto cl = run_protocol_classical(c, proto, cfg);
    CHECK((to_dense(ex.final_state) - to_dense(cl.final_state)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Control-Not fragment at N=6 matches the exact engine") {
    const auto cfg = ChainConfig::make(6, 10.0);
    auto proto = build_cn_protocol(cfg, RabiChoice::rabi(0.25), false);
    proto.pulses.resize(4);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(64);
    c(0) = 1;
    const auto ex = run_protocol_exact(c, proto, cfg);
    const auto cl = run_protocol_classical(c, proto, cfg);
    const Eigen::VectorXcd a = to_dense(ex.final_state);
    const Eigen::VectorXcd b = to_dense(cl.final_state);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(b.squaredNorm() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integration is linear") {
    const auto cfg = ChainConfig::make(3, 10.0);
    const auto proto = build_cn_protocol(cfg, RabiChoice::rabi(0.3), false);
    const auto c = random_state(8, 4);
    const cplx z{0.3, -0.4};
    const auto a = integrate(to_classical(c), proto, cfg);
    const auto b = integrate(to_classical(z * c), proto, cfg);
    CHECK((to_quantum(b) - z * to_quantum(a)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("classical engine guards") {
    const auto cfg = ChainConfig::make(9, 10.0);
    const auto proto = build_cn_protocol(cfg, RabiChoice::rabi(0.3), false);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(512);
    c(0) = 1;
    CHECK_THROWS_AS(run_protocol_classical(c, proto, cfg), Error);

    const auto small = ChainConfig::make(3, 10.0);
    const auto p3 = build_cn_protocol(small, RabiChoice::rabi(0.3), false);
    IntegrateOptions coarse;
    coarse.phase_step = 3.0;
    try {
        integrate(to_classical(random_state(8, 5)), p3, small, coarse);
        FAIL("expected StepTooLarge");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::StepTooLarge);
    }
}

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

#include "oracles.hpp"
#include "spinchain/error.hpp"
#include "spinchain/error_model.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/perturbative.hpp"
#include "spinchain/pulse_design.hpp"

using namespace spinchain;
using cplx = std::complex<double>;

TEST_CASE("rotating Hamiltonian structure") {
    for (std::size_t n = 2; n <= 5; ++n) {
        const auto cfg = ChainConfig::make(n, 10.0);
        const Pulse p{cfg.larmor(1) + 2.0, 0.3, 1.0, 0.0, "x"};
        const auto h = build_rotating_hamiltonian(p, cfg);
        const Eigen::MatrixXd m = h.dense();
        CHECK(m.isApprox(m.transpose(), 0.0));
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Eigen::Index nonzero = 0;
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (i != j && m(i, j) != 0.0) {
                    ++nonzero;
                    CHECK(m(i, j) == -0.15);
                }
            }
            CHECK(nonzero == static_cast<Eigen::Index>(n));
        }
        // Diagonal is E_p - chi_p with chi_p = -(nu/2) sum sigma.
        const Eigen::MatrixXd h0 = oracle::ising_h0(n, cfg.base_larmor, cfg.larmor_spacing, 1.0);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            double sum = 0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += ((i >> k) & 1) ? -1.0 : 1.0;
            }
            CHECK(m(i, i) == doctest::Approx(h0(i, i) + 0.5 * p.frequency * sum).epsilon(1e-12));
        }
    }
}

TEST_CASE("two-spin Hamiltonian by hand") {
    ChainConfig cfg;
    cfg.n_qubits = 2;
    cfg.base_larmor = 100.0;
    cfg.larmor_spacing = 10.0;
    const Pulse p{105.0, 0.4, 1.0, 0.0, "x"};
    const Eigen::MatrixXd m = build_rotating_hamiltonian(p, cfg).dense();
    // |00>: -(w0-nu)/2 - (w1-nu)/2 - J/2 = 2.5 - 2.5 - 0.5
    CHECK(m(0, 0) == doctest::Approx(-0.5));
    // |01>: +(w0-nu)/2 - (w1-nu)/2 + J/2 = -2.5 - 2.5 + 0.5
    CHECK(m(1, 1) == doctest::Approx(-4.5));
    CHECK(m(2, 2) == doctest::Approx(5.5));
    CHECK(m(3, 3) == doctest::Approx(-0.5));
    CHECK(m(0, 3) == 0.0);
    CHECK(m(0, 1) == doctest::Approx(-0.2));
}

TEST_CASE("cap is enforced") {
    const auto cfg = ChainConfig::make(6, 10.0);
    const Pulse p{cfg.larmor(1), 0.3, 1.0, 0.0, "x"};
    CHECK_THROWS_AS(build_rotating_hamiltonian(p, cfg, 5), Error);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(64);
    c(0) = 1;
    Protocol proto;
    proto.pulses = {p};
    ExactOptions opt;
    opt.cap = 5;
    CHECK_THROWS_AS(run_protocol_exact(c, proto, cfg, opt), Error);
}

TEST_CASE("eigensystem residual and orthonormality") {
    const auto cfg = ChainConfig::make(7, 20.0);
    const Pulse p{cfg.larmor(3), 0.25, 1.0, 0.0, "x"};
    const auto h = build_rotating_hamiltonian(p, cfg);
    const auto eig = diagonalize(h);
    const Eigen::MatrixXd m = h.dense();
    const double scale = m.norm();
    for (Eigen::Index q = 0; q < eig.values.size(); ++q) {
        const Eigen::VectorXd v = eig.vectors.col(q);
        CHECK((m * v - (eig.values(q) + eig.shift) * v).norm() <= 1e-10 * scale);
    }
    const Eigen::MatrixXd gram = eig.vectors.transpose() * eig.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("evolution preserves the norm and is the identity at tau = 0") {
    const auto cfg = ChainConfig::make(6, 20.0);
    const Pulse p{cfg.larmor(2), 0.25, 1.0, 0.0, "x"};
    const auto h = build_rotating_hamiltonian(p, cfg);
    const auto eig = diagonalize(h);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    Eigen::VectorXcd a(64);
    for (auto &x : a) {
        x = {g(rng), g(rng)};
    }
    a.normalize();
    CHECK((evolve_pulse_exact(a, eig, 0.0) - a).norm() == 0.0);
    for (double tau : {0.1, 3.0, 40.0}) {
        CHECK(evolve_pulse_exact(a, eig, tau).norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
    // Two half steps equal one full step.
    const auto full = evolve_pulse_exact(a, eig, 10.0);
    const auto halves = evolve_pulse_exact(evolve_pulse_exact(a, eig, 5.0), eig, 5.0);
    CHECK((full - halves).norm() < 1e-11);
}

TEST_CASE("frame conversions round-trip") {
    const auto cfg = ChainConfig::make(5, 20.0);
    const Pulse p{cfg.larmor(2), 0.25, 1.0, 0.7, "x"};
    const auto h = build_rotating_hamiltonian(p, cfg);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    Eigen::VectorXcd c(32);
    for (auto &x : c) {
        x = {g(rng), g(rng)};
    }
    CHECK((frame_to_interaction(frame_to_rotating(c, h, 123.0), h, 123.0) - c).norm() < 1e-12);
    Protocol none;
    const auto h0 = build_rotating_hamiltonian(Pulse{p.frequency, p.rabi, 1.0, 0.0, "x"}, cfg);
    CHECK((frame_to_rotating(c, h0, 0.0) - c).norm() == 0.0);
}

TEST_CASE("one-flip phase after conversion matches the two-level solution at N=2") {
    ChainConfig cfg;
    cfg.n_qubits = 2;
    cfg.base_larmor = 100.0;
    cfg.larmor_spacing = 10.0;
    const BasisState m = BasisState::from_string("00");
    const double omega = 0.3;
    const Pulse pulse{cfg.larmor(0) + 1.0 - 2.0, omega, 4.0, 0.0, "x"};
    const auto tc = classify_transition(m, pulse.frequency, cfg);
    REQUIRE(tc.kind == TransitionKind::NearResonant);
    Protocol proto;
    proto.pulses = {Pulse{cfg.larmor(1) + 40.0, 1e-9, 17.0, 0.0, "idle"}, pulse};
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(4);
    c(0) = 1.0;
    // A negligible first pulse moves the start time of the second to 17.
    const auto r = run_protocol_exact(c, proto, cfg);
    const auto u = two_level_propagator(omega, tc.detuning, 4.0, 17.0);
    // Exact includes small non-resonant leakage; the pair phase must agree.
    const cplx cp = r.amplitude(m.flipped(0));
    CHECK(std::abs(std::arg(cp / u.pm)) < 1e-2);
    CHECK(std::abs(cp) == doctest::Approx(std::abs(u.pm)).epsilon(2e-2));
}

TEST_CASE("resonant pi-pulse at N=4 transfers 1 - O(mu)") {
    const auto cfg = ChainConfig::make(4, 100.0);
    const BasisState ground(4);
    const double omega = 0.1;
    Protocol proto;
    proto.pulses = {Pulse{transition_frequency(ground, 2, cfg), omega, std::numbers::pi / omega, 0.0, "pi"}};
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(16);
    c(0) = 1.0;
    const auto r = run_protocol_exact(c, proto, cfg);
    const double moved = std::norm(r.amplitude(ground.flipped(2)));
    const double mu = mu_base(omega, cfg.larmor_spacing);
    CHECK(moved < 1.0);
    CHECK(1.0 - moved < 20 * mu);
}

TEST_CASE("two-level block eigenpairs") {
    const auto cfg = ChainConfig::make(4, 100.0);
    const BasisState ground(4);
    SUBCASE("resonant") {
        const Pulse p{transition_frequency(ground, 1, cfg), 0.2, 1.0, 0.0, "x"};
        const auto b = two_level_block(ground, p, cfg);
        CHECK(b.detuning == 0.0);
        CHECK(b.v_low(0) == doctest::Approx(1 / std::numbers::sqrt2));
        CHECK(b.v_low(1) == doctest::Approx(1 / std::numbers::sqrt2));
        CHECK(b.v_high(0) == doctest::Approx(-1 / std::numbers::sqrt2));
        CHECK(b.v_high(1) == doctest::Approx(1 / std::numbers::sqrt2));
        CHECK(b.e_high - b.e_low == doctest::Approx(0.2));
    }
    SUBCASE("near-resonant mixing is Omega/4J") {
        const double omega = 0.01;
        const Pulse p{cfg.larmor(1), omega, 1.0, 0.0, "x"};
        const auto b = two_level_block(ground, p, cfg);
        CHECK(b.detuning == doctest::Approx(2.0));
        CHECK(b.v_low(1) == doctest::Approx(omega / 4).epsilon(1e-4));
        CHECK(b.v_low(0) == doctest::Approx(1 - omega * omega / 32).epsilon(1e-9));
        CHECK(b.e_high - b.e_low == doctest::Approx(b.lambda));
        // Eigen-equation of the block.
        Eigen::Matrix2d h;
        h << b.diag_lower, -omega / 2, -omega / 2, b.diag_lower + b.detuning;
        CHECK((h * b.v_low - b.e_low * b.v_low).norm() < 1e-12);
        CHECK((h * b.v_high - b.e_high * b.v_high).norm() < 1e-12);
    }
    SUBCASE("non-resonant input is rejected") {
        const Pulse p{cfg.larmor(1) + 30.0, 0.2, 1.0, 0.0, "x"};
        CHECK_THROWS_AS(two_level_block(ground, p, cfg), Error);
    }
}

TEST_CASE("block evolution reproduces the two-level closed form") {
    const auto cfg = ChainConfig::make(4, 100.0);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> om(0.01, 1.0), ta(0.1, 50.0), t0(0.0, 500.0), ph(-3.0, 3.0);
    const BasisState ground(4);
    const std::vector<double> shifts{0.0, 2.0, -2.0, 4.0};
    for (int trial = 0; trial < 100; ++trial) {
        const double nu = cfg.larmor(1) + 2.0 - shifts[static_cast<std::size_t>(trial) % shifts.size()];
        const Pulse pulse{nu, om(rng), ta(rng), ph(rng), "x"};
        const auto b = two_level_block(ground, pulse, cfg);
        const double start = t0(rng);
        const auto u = two_level_propagator(pulse.rabi, b.detuning, pulse.duration, start, pulse.phase);
        const auto m = evolve_two_level_block(b, {1.0, 0.0}, start, pulse.duration);
        const auto p = evolve_two_level_block(b, {0.0, 1.0}, start, pulse.duration);
        CHECK(std::abs(m(0) - u.mm) < 1e-10);
        CHECK(std::abs(m(1) - u.pm) < 1e-10);
        CHECK(std::abs(p(0) - u.mp) < 1e-10);
        CHECK(std::abs(p(1) - u.pp) < 1e-10);
    }
}

TEST_CASE("non-resonant admixture follows (V / distance delta omega)^2") {
    // Probability of the one-flip state m' in the eigenstate that continues
    // |m>, for a pulse near-resonant with spin k of the ground state.
    const std::size_t n = 6;
    const auto cfg = ChainConfig::make(n, 200.0);
    const BasisState ground(n);
    const double omega = 0.05;
    const std::size_t k = 2;
    const Pulse p{cfg.larmor(k), omega, 1.0, 0.0, "x"};
    const auto h = build_rotating_hamiltonian(p, cfg);
    const auto eig = diagonalize(h);
    Eigen::Index q = 0;
    eig.vectors.row(0).cwiseAbs().maxCoeff(&q);
    for (std::size_t d : {1u, 2u, 3u}) {
        const auto other = ground.flipped(k + d);
        const double pr = std::pow(eig.vectors(static_cast<Eigen::Index>(other.to_index()), q), 2);
        const double expected = nonresonant_leak(omega, cfg.larmor_spacing, d);
        CHECK(pr > 0.5 * expected);
        CHECK(pr < 1.5 * expected);
    }
}

TEST_CASE("exact and perturbative engines agree deep in the small-parameter regime") {
    const std::size_t n = 6;
    const auto cfg = ChainConfig::make(n, 1000.0);
    const double omega = 0.05;
    const auto proto = build_cn_protocol(cfg, RabiChoice::rabi(omega), false);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(64);
    c(0) = 1;
    ChainConfig loose = cfg;
    loose.cutoff = 1e-14;
    const auto ex = run_protocol_exact(c, proto, loose);
    const auto pt = run_protocol(SparseState::basis(BasisState(n)), proto, loose);
    const double scale = mu_base(omega, cfg.larmor_spacing) * static_cast<double>(proto.size()) * 20.0;
    // The off-resonant spins shift the pi/2-pulse detuning by O(Omega^2 / delta omega), which moves
    // O(Omega / delta omega) population between the two wanted states but not out of them.
    double wanted_ex = 0, wanted_pt = 0;
    for (const auto &w : proto.wanted) {
        CHECK(std::abs(std::norm(ex.amplitude(w)) - std::norm(pt.amplitude(w))) < omega / cfg.larmor_spacing);
        wanted_ex += std::norm(ex.amplitude(w));
        wanted_pt += std::norm(pt.amplitude(w));
    }
    CHECK(std::abs(wanted_ex - wanted_pt) < scale);
    const Eigen::VectorXcd dense = to_dense(ex.final_state);
    for (Eigen::Index i = 0; i < dense.size(); ++i) {
        const auto s = BasisState::from_index(n, static_cast<std::uint64_t>(i));
        if (s != proto.wanted[0] && s != proto.wanted[1]) {
            CHECK(std::abs(std::norm(dense(i)) - std::norm(pt.amplitude(s))) < scale);
        }
    }
}

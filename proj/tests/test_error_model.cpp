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
#include <sstream>

#include "oracles.hpp"
#include "spinchain/error_model.hpp"
#include "spinchain/pulse_design.hpp"

using namespace spinchain;

TEST_CASE("epsilon") {
    CHECK(epsilon(0.15, 2.0, std::numbers::pi / 0.15) == doctest::Approx(0.0039).epsilon(0.03));
    for (int k = 1; k < 15; ++k) {
        const double o = rabi_for_2pik(2.0, k, PulseKind::Pi);
        CHECK(epsilon(o, 2.0, std::numbers::pi / o) < 1e-12);
    }
    CHECK(epsilon(1e-8, 2.0, 3.0) < 1e-16);
    CHECK(epsilon(0.3, 0.0, std::numbers::pi / 0.3) == doctest::Approx(1.0));
}

TEST_CASE("non-resonant scales") {
    CHECK(mu_base(0.1, 100.0) == doctest::Approx(2.5e-7));
    CHECK(mu_k(0.1, 100.0, 0, 2) == doctest::Approx(2.5e-7));
    CHECK(mu_k(0.1, 100.0, 1, 2) == doctest::Approx(2.5e-7));
    CHECK(nonresonant_leak(0.1, 100.0, 1) == doctest::Approx(mu_base(0.1, 100.0)));
    CHECK(nonresonant_leak(0.1, 100.0, 2) == doctest::Approx(mu_base(0.1, 100.0) / 4));
    // Bulk spin of a long chain: sum over both sides tends to pi^2/3.
    const std::size_t n = 20001;
    CHECK(mu_k(1.0, 0.5, n / 2, n) == doctest::Approx(std::numbers::pi * std::numbers::pi / 3).epsilon(1e-4));
    // mu_k is the sum of the pairwise leaks.
    for (std::size_t k = 0; k < 7; ++k) {
        double sum = 0;
        for (std::size_t kk = 0; kk < 7; ++kk) {
            if (kk != k) {
                sum += nonresonant_leak(0.2, 30.0, k > kk ? k - kk : kk - k);
            }
        }
        CHECK(mu_k(0.2, 30.0, k, 7) == doctest::Approx(sum).epsilon(1e-14));
    }
}

TEST_CASE("total error limits") {
    // No leakage and epsilon = 0: no error.
    CHECK(std::abs(total_error(0.0, std::vector<double>(10, 0.0))) < 1e-15);
    auto cfg = ChainConfig::make(10, 1e9);
    const double o8 = rabi_for_2pik(2.0, 8, PulseKind::Pi);
    CHECK(total_error(cfg, o8).total < 1e-15);
    // With mu = 0 the formula is 1/2 (1 - (1 - eps)^M): first order M eps / 2.
    for (double eps : {1e-5, 1e-4, 1e-3}) {
        const std::size_t m = cn_pi_pulse_count(10);
        const double p = total_error(eps, std::vector<double>(10, 0.0));
        CHECK(p == doctest::Approx(0.5 * (1 - std::pow(1 - eps, m))).epsilon(1e-12));
        const double me = static_cast<double>(m) * eps;
        CHECK(std::abs((1 - p - 0.5) - first_order_ground_probability(m, eps)) < me * me);
        CHECK(std::abs(p - 0.5 * me) < me * me);
    }
}

TEST_CASE("total error falls as 1 / delta omega^2 at the 2 pi k point") {
    const double o8 = rabi_for_2pik(2.0, 8, PulseKind::Pi);
    std::vector<double> x, y;
    for (double dw : geometric_grid(50.0, 1000.0, 20)) {
        x.push_back(dw);
        y.push_back(total_error(ChainConfig::make(10, dw), o8).total);
    }
    CHECK(oracle::loglog_slope(x, y) == doctest::Approx(-2.0).epsilon(0.01));
}

TEST_CASE("total error is monotone in delta omega") {
    for (double o : {0.05, 0.14, 0.3, 0.5}) {
        double prev = 2.0;
        for (double dw : geometric_grid(10.0, 1e5, 40)) {
            const double p = total_error(ChainConfig::make(12, dw), o).total;
            CHECK(p <= prev);
            prev = p;
        }
    }
}

TEST_CASE("grids") {
    const auto g = geometric_grid(10.0, 1000.0, 3);
    CHECK(g[1] == doctest::Approx(100.0));
    CHECK(g[2] == 1000.0);
    const auto l = linear_grid(0.1, 0.2, 11);
    CHECK(l[5] == doctest::Approx(0.15));
    CHECK(nearest_two_pi_k(0.1432, 1.0) == 7);
    CHECK(nearest_two_pi_k(0.1, 1.0) == 10);
}

TEST_CASE("threshold regions") {
    const auto spacings = geometric_grid(10.0, 1e5, 21);
    const auto rabis = linear_grid(0.08, 0.2, 241);
    const auto cfg10 = ChainConfig::make(10, 100.0);
    const auto all = sweep_threshold_regions(cfg10, spacings, rabis, 1.0);
    CHECK(all.accepted_count() == spacings.size() * rabis.size());

    const auto p5 = sweep_threshold_regions(cfg10, spacings, rabis, 1e-5);
    const auto p4 = sweep_threshold_regions(cfg10, spacings, rabis, 1e-4, 3);
    CHECK(p4.accepted_count() > p5.accepted_count());
    for (std::size_t i = 0; i < spacings.size(); ++i) {
        CHECK(p4.accepted_width(i) >= p5.accepted_width(i));
    }
    auto cfg1000 = cfg10;
    cfg1000.n_qubits = 1000;
    const auto big = sweep_threshold_regions(cfg1000, spacings, rabis, 1e-5);
    CHECK(big.accepted_count() < p5.accepted_count());

    // Worker count does not change the map.
    const auto p5b = sweep_threshold_regions(cfg10, spacings, rabis, 1e-5, 4);
    CHECK(p5b.error == p5.error);

    for (const auto &iv : p5.intervals) {
        CHECK(iv.rabi_lo <= iv.rabi_hi);
        CHECK(iv.anchor_rabi == doctest::Approx(rabi_for_2pik(2.0, iv.anchor_k, PulseKind::Pi)));
    }
    std::ostringstream csv;
    write_region_csv(csv, p5);
    CHECK(csv.str().rfind("spacing,rabi,error,accepted\r\n", 0) == 0);
}

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


#include "spinchain/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include "spinchain/error.hpp"
#include "spinchain/pulse_design.hpp"
#include "spinchain/run_report.hpp"

namespace spinchain {

double epsilon(double rabi, double detuning, double duration) {
    const double lambda = std::hypot(rabi, detuning);
    if (lambda == 0.0) {
        return 0.0;
    }
    const double s = std::sin(0.5 * lambda * duration);
    const double r = rabi / lambda;
    return r * r * s * s;
}

double mu_base(double rabi, double larmor_spacing) {
    if (!(larmor_spacing > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "larmor spacing must be positive");
    }
    const double r = rabi / (2.0 * larmor_spacing);
    return r * r;
}

double mu_k(double rabi, double larmor_spacing, std::size_t k, std::size_t n_qubits) {
    if (k >= n_qubits) {
        throw Error(ErrorCode::InvalidArgument, "spin index out of range");
    }
    double sum = 0.0;
    // Smallest terms first.
    for (std::size_t d = n_qubits; d-- > 1;) {
        const double inv = 1.0 / (static_cast<double>(d) * static_cast<double>(d));
        if (k >= d) {
            sum += inv;
        }
        if (k + d < n_qubits) {
            sum += inv;
        }
    }
    return mu_base(rabi, larmor_spacing) * sum;
}

double nonresonant_leak(double rabi, double larmor_spacing, std::size_t distance) {
    if (distance < 1) {
        throw Error(ErrorCode::InvalidArgument, "distance must be at least 1");
    }
    const double r = 0.5 * rabi / (static_cast<double>(distance) * larmor_spacing);
    return r * r;
}

double total_error(double eps, const std::vector<double> &mu) {
    const std::size_t n = mu.size();
    if (n < 3) {
        throw Error(ErrorCode::InvalidArgument, "error formula needs at least 3 qubits");
    }
    double a = 0.5 * (1.0 - mu[n - 1]) * (1.0 - mu[n - 2] - eps) * (1.0 - 4.0 * mu[n - 2] - eps) * (1.0 - mu[0] - eps);
    for (std::size_t i = 1; i + 3 <= n; ++i) {
        const double f = 1.0 - mu[i] - eps;
        a *= f * f;
    }
    double b = 0.5 * (1.0 - mu[n - 2]) * (1.0 - 4.0 * mu[n - 2]);
    for (std::size_t i = 0; i + 3 <= n; ++i) {
        const double f = 1.0 - mu[i];
        b *= f * f;
    }
    return 1.0 - a - b;
}

namespace {

// sum_{k' != k} 1 / (k - k')^2 for every k, from prefix sums of 1/d^2.
std::vector<double> inverse_square_sums(std::size_t n) {
    std::vector<double> h(n, 0.0);
    for (std::size_t d = 1; d < n; ++d) {
        h[d] = h[d - 1] + 1.0 / (static_cast<double>(d) * static_cast<double>(d));
    }
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) {
        s[k] = h[k] + h[n - 1 - k];
    }
    return s;
}

ErrorBudget budget(const ChainConfig &cfg, double rabi, const std::vector<double> &weights) {
    if (!(rabi > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "Rabi frequency must be positive");
    }
    ErrorBudget b;
    b.n_qubits = cfg.n_qubits;
    b.m_pulses = cn_pi_pulse_count(cfg.n_qubits);
    b.epsilon = epsilon(rabi, 2.0 * cfg.coupling, std::numbers::pi / rabi);
    b.mu = mu_base(rabi, cfg.larmor_spacing);
    b.mu_k.resize(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        b.mu_k[k] = b.mu * weights[k];
    }
    b.total = total_error(b.epsilon, b.mu_k);
    return b;
}

}  // namespace

ErrorBudget total_error(const ChainConfig &cfg, double rabi) {
    cfg.validate();
    return budget(cfg, rabi, inverse_square_sums(cfg.n_qubits));
}

double first_order_ground_probability(std::size_t m_pulses, double eps) {
    return 0.5 * (1.0 - static_cast<double>(m_pulses) * eps);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
        throw Error(ErrorCode::InvalidArgument, "geometric grid needs 0 < lo <= hi and count > 0");
    }
    std::vector<double> out(count);
    const double step = count > 1 ? std::log(hi / lo) / static_cast<double>(count - 1) : 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo * std::exp(step * static_cast<double>(i));
    }
    out.back() = hi;
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (!(hi >= lo) || count == 0) {
        throw Error(ErrorCode::InvalidArgument, "linear grid needs lo <= hi and count > 0");
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = count > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1) : lo;
    }
    return out;
}

int nearest_two_pi_k(double rabi, double coupling) {
    if (!(rabi > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "Rabi frequency must be positive");
    }
    const double r = 2.0 * coupling / rabi;
    const double guess = 0.5 * std::sqrt(r * r + 1.0);
    int best = std::max(1, static_cast<int>(std::floor(guess)));
    double best_gap = std::abs(rabi_for_2pik(2.0 * coupling, best, PulseKind::Pi) - rabi);
    for (int k = std::max(1, best - 1); k <= best + 2; ++k) {
        const double gap = std::abs(rabi_for_2pik(2.0 * coupling, k, PulseKind::Pi) - rabi);
        if (gap < best_gap) {
            best = k;
            best_gap = gap;
        }
    }
    return best;
}

std::size_t RegionMap::accepted_count() const {
    std::size_t c = 0;
    for (char a : accepted) {
        c += a ? 1 : 0;
    }
    return c;
}

double RegionMap::accepted_width(std::size_t spacing_index) const {
    if (rabis.size() < 2) {
        return 0.0;
    }
    const double step = (rabis.back() - rabis.front()) / static_cast<double>(rabis.size() - 1);
    std::size_t c = 0;
    for (std::size_t j = 0; j < rabis.size(); ++j) {
        c += accepted[index(spacing_index, j)] ? 1 : 0;
    }
    return step * static_cast<double>(c);
}

std::optional<std::size_t> RegionMap::first_accepted_row() const {
    for (std::size_t i = 0; i < spacings.size(); ++i) {
        for (std::size_t j = 0; j < rabis.size(); ++j) {
            if (accepted[index(i, j)]) {
                return i;
            }
        }
    }
    return std::nullopt;
}

RegionMap sweep_threshold_regions(const ChainConfig &cfg, const std::vector<double> &spacings,
                                  const std::vector<double> &rabis, double threshold, std::size_t workers) {
    RegionMap map;
    map.n_qubits = cfg.n_qubits;
    map.threshold = threshold;
    map.spacings = spacings;
    map.rabis = rabis;
    map.error.assign(spacings.size() * rabis.size(), 0.0);
    map.accepted.assign(spacings.size() * rabis.size(), 0);

    cfg.validate();
    const auto weights = inverse_square_sums(cfg.n_qubits);
    auto fill_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            ChainConfig c = cfg;
            c.larmor_spacing = spacings[i];
            c.validate();
            for (std::size_t j = 0; j < rabis.size(); ++j) {
                const double p = budget(c, rabis[j], weights).total;
                map.error[map.index(i, j)] = p;
                map.accepted[map.index(i, j)] = p < threshold ? 1 : 0;
            }
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, spacings.size()));
    if (workers == 1) {
        fill_rows(0, spacings.size());
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(workers);
        const std::size_t rows = spacings.size();
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    fill_rows(rows * w / workers, rows * (w + 1) / workers);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : threads) {
            t.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    for (std::size_t i = 0; i < spacings.size(); ++i) {
        std::size_t j = 0;
        while (j < rabis.size()) {
            if (!map.accepted[map.index(i, j)]) {
                ++j;
                continue;
            }
            std::size_t end = j;
            while (end + 1 < rabis.size() && map.accepted[map.index(i, end + 1)]) {
                ++end;
            }
            AcceptedInterval iv;
            iv.larmor_spacing = spacings[i];
            iv.rabi_lo = rabis[j];
            iv.rabi_hi = rabis[end];
            iv.anchor_k = nearest_two_pi_k(0.5 * (iv.rabi_lo + iv.rabi_hi), cfg.coupling);
            iv.anchor_rabi = rabi_for_2pik(2.0 * cfg.coupling, iv.anchor_k, PulseKind::Pi);
            map.intervals.push_back(iv);
            j = end + 1;
        }
    }
    return map;
}

void write_region_csv(std::ostream &out, const RegionMap &map) {
    out << "spacing,rabi,error,accepted\r\n";
    for (std::size_t i = 0; i < map.spacings.size(); ++i) {
        for (std::size_t j = 0; j < map.rabis.size(); ++j) {
            out << format_double(map.spacings[i]) << ',' << format_double(map.rabis[j]) << ','
                << format_double(map.error[map.index(i, j)]) << ',' << (map.accepted[map.index(i, j)] ? 1 : 0)
                << "\r\n";
        }
    }
}

void write_interval_csv(std::ostream &out, const RegionMap &map) {
    out << "spacing,rabi_lo,rabi_hi,anchor_k,anchor_rabi\r\n";
    for (const auto &iv : map.intervals) {
        out << format_double(iv.larmor_spacing) << ',' << format_double(iv.rabi_lo) << ','
            << format_double(iv.rabi_hi) << ',' << iv.anchor_k << ',' << format_double(iv.anchor_rabi) << "\r\n";
    }
}

}  // namespace spinchain

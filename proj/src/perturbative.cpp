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


#include "spinchain/perturbative.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "spinchain/error.hpp"

namespace spinchain {

using cplx = std::complex<double>;

TwoLevelPropagator two_level_propagator(double rabi, double detuning, double duration, double start_time,
                                        double phase) {
    const double lambda = std::hypot(rabi, detuning);
    if (lambda == 0.0) {
        return {1.0, 0.0, 0.0, 1.0};
    }
    const double c = std::cos(0.5 * lambda * duration);
    const double s = std::sin(0.5 * lambda * duration);
    const double d = detuning / lambda;
    const double o = rabi / lambda;
    const double half = 0.5 * duration * detuning;
    const double start = start_time * detuning;
    const cplx i{0.0, 1.0};
    TwoLevelPropagator u;
    u.mm = cplx{c, d * s} * std::polar(1.0, -half);
    u.pp = cplx{c, -d * s} * std::polar(1.0, half);
    u.pm = i * o * s * std::polar(1.0, start + half - phase);
    u.mp = i * o * s * std::polar(1.0, -start - half + phase);
    return u;
}

double two_level_excitation(double rabi, double detuning, double duration) {
    const double lambda = std::hypot(rabi, detuning);
    if (lambda == 0.0) {
        return 0.0;
    }
    const double s = std::sin(0.5 * lambda * duration);
    return (rabi / lambda) * (rabi / lambda) * s * s;
}

namespace {

// Evolves the entries in [begin, end) and appends the results. A pair is
// handled by its lower member, or by the upper one when the lower is not
// tracked, so each pair is written exactly once.
void apply_range(const SparseState &state, const Pulse &pulse, const ChainConfig &cfg,
                 const std::vector<std::size_t> &candidates, std::size_t begin, std::size_t end,
                 std::vector<Amplitude> &out) {
    const auto &entries = state.entries();
    for (std::size_t i = begin; i < end; ++i) {
        const auto &e = entries[i];
        const TransitionClass tc = classify_transition(e.state, pulse.frequency, cfg, candidates);
        if (tc.kind == TransitionKind::NonResonant) {
            out.push_back(e);
            continue;
        }
        const bool is_upper = e.state.test(tc.spin);
        const BasisState partner = e.state.flipped(tc.spin);
        const std::size_t j = state.find(partner);
        if (j != SparseState::npos) {
            const TransitionClass other = classify_transition(partner, pulse.frequency, cfg, candidates);
            if (other.kind == TransitionKind::NonResonant || other.spin != tc.spin) {
                throw Error(ErrorCode::AmbiguousTransition,
                            "states " + e.state.to_string() + " and " + partner.to_string() +
                                " disagree on their transition under pulse '" + pulse.label + "'");
            }
            if (is_upper) {
                continue;
            }
        }
        const cplx c_m = is_upper ? (j == SparseState::npos ? cplx{} : entries[j].value) : e.value;
        const cplx c_p = is_upper ? e.value : (j == SparseState::npos ? cplx{} : entries[j].value);
        const auto u =
            two_level_propagator(pulse.rabi, tc.detuning, pulse.duration, state.time(), pulse.phase);
        const BasisState &m = is_upper ? partner : e.state;
        const BasisState &p = is_upper ? e.state : partner;
        out.push_back({m, u.mm * c_m + u.mp * c_p});
        out.push_back({p, u.pm * c_m + u.pp * c_p});
    }
}

}  // namespace

SparseState apply_pulse(const SparseState &state, const Pulse &pulse, const ChainConfig &cfg,
                        const EngineOptions &options) {
    pulse.validate();
    if (state.n_qubits() != cfg.n_qubits) {
        throw Error(ErrorCode::SizeMismatch, "state size does not match chain");
    }
    const auto candidates = candidate_spins(pulse.frequency, cfg);
    const std::size_t n = state.size();
    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(1, n / 256));

    std::vector<std::vector<Amplitude>> parts(workers);
    if (workers == 1) {
        parts[0].reserve(2 * n);
        apply_range(state, pulse, cfg, candidates, 0, n, parts[0]);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    apply_range(state, pulse, cfg, candidates, n * w / workers, n * (w + 1) / workers, parts[w]);
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
    std::vector<Amplitude> merged;
    merged.reserve(2 * n);
    for (auto &part : parts) {
        std::move(part.begin(), part.end(), std::back_inserter(merged));
    }
    return SparseState::from_entries(state.n_qubits(), std::move(merged), state.leaked(),
                                     state.time() + pulse.duration);
}

RunReport run_protocol(const SparseState &initial, const Protocol &protocol, const ChainConfig &cfg,
                       const RunOptions &options) {
    cfg.validate();
    if (initial.n_qubits() != cfg.n_qubits) {
        throw Error(ErrorCode::SizeMismatch, "initial state size does not match chain");
    }
    RunTracker tracker(cfg, protocol.wanted, options.trace);
    EngineOptions engine{options.workers};
    SparseState state = initial;
    for (std::size_t n = 0; n < protocol.pulses.size(); ++n) {
        state = prune(apply_pulse(state, protocol.pulses[n], cfg, engine), cfg.cutoff);
        tracker.observe(n, protocol.pulses[n], state);
    }
    return tracker.finish(std::move(state),
                          {"perturbative", options.config_hash, options.seed, options.doubled_probabilities});
}

}  // namespace spinchain

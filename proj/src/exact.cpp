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


#include "spinchain/exact.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <tuple>

#include "spinchain/error.hpp"

#ifdef SPINCHAIN_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace spinchain {

using cplx = std::complex<double>;

Eigen::MatrixXd RotatingHamiltonian::dense() const {
    const auto dim = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXd m = diagonal.asDiagonal();
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < n_qubits; ++k) {
            m(i, i ^ (Eigen::Index{1} << k)) = offdiag;
        }
    }
    return m;
}

RotatingHamiltonian build_rotating_hamiltonian(const Pulse &pulse, const ChainConfig &cfg, std::size_t cap) {
    cfg.validate();
    if (cfg.n_qubits > cap || cfg.n_qubits > 30) {
        throw Error(ErrorCode::CapExceeded, "exact engine is capped at " + std::to_string(cap) + " qubits, chain has " +
                                                std::to_string(cfg.n_qubits));
    }
    const std::size_t n = cfg.n_qubits;
    const Eigen::Index dim = Eigen::Index{1} << n;
    RotatingHamiltonian h;
    h.n_qubits = n;
    h.pulse = pulse;
    h.offdiag = -0.5 * pulse.rabi;
    h.diagonal.resize(dim);
    h.xi.resize(dim);
    std::vector<double> detune(n);
    for (std::size_t k = 0; k < n; ++k) {
        detune[k] = cfg.larmor(k) - pulse.frequency;
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        double zeeman = 0.0;
        int total = 0;
        int ising = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const int s = ((i >> k) & 1) ? -1 : 1;
            zeeman += detune[k] * s;
            total += s;
            if (k + 1 < n) {
                ising += s * (((i >> (k + 1)) & 1) ? -1 : 1);
            }
        }
        h.diagonal(i) = -0.5 * zeeman - 0.5 * cfg.coupling * ising;
        h.xi(i) = 0.5 * pulse.phase * total;
    }
    return h;
}

EigenSystem diagonalize(const RotatingHamiltonian &h) {
    EigenSystem out;
    out.shift = h.diagonal.mean();
    Eigen::MatrixXd m = h.dense();
    m.diagonal().array() -= out.shift;
#ifdef SPINCHAIN_HAVE_LAPACKE
    // Divide and conquer is several times faster than Eigen's QR iteration
    // at 2^10 and above.
    const auto dim = static_cast<lapack_int>(m.rows());
    out.values.resize(m.rows());
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', dim, m.data(), dim, out.values.data());
    if (info != 0) {
        throw Error(ErrorCode::InvalidArgument, "eigensolver failed with code " + std::to_string(info));
    }
    out.vectors = std::move(m);
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::InvalidArgument, "eigensolver did not converge");
    }
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
#endif
    return out;
}

Eigen::VectorXcd evolve_pulse_exact(const Eigen::VectorXcd &amps, const EigenSystem &eig, double tau) {
    if (amps.size() != eig.vectors.rows()) {
        throw Error(ErrorCode::SizeMismatch, "amplitude vector does not match the Hamiltonian");
    }
    if (tau == 0.0) {
        return amps;
    }
    // Real and imaginary parts separately: the vectors are real.
    const Eigen::VectorXd re = eig.vectors.transpose() * amps.real();
    const Eigen::VectorXd im = eig.vectors.transpose() * amps.imag();
    Eigen::VectorXd out_re(re.size());
    Eigen::VectorXd out_im(re.size());
    for (Eigen::Index q = 0; q < re.size(); ++q) {
        const cplx v = cplx{re(q), im(q)} * std::polar(1.0, -(eig.values(q) + eig.shift) * tau);
        out_re(q) = v.real();
        out_im(q) = v.imag();
    }
    Eigen::VectorXcd out(re.size());
    out.real() = eig.vectors * out_re;
    out.imag() = eig.vectors * out_im;
    return out;
}

Eigen::VectorXcd frame_to_rotating(const Eigen::VectorXcd &c, const RotatingHamiltonian &h, double t) {
    if (c.size() != h.diagonal.size()) {
        throw Error(ErrorCode::SizeMismatch, "amplitude vector does not match the Hamiltonian");
    }
    Eigen::VectorXcd a(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        a(i) = std::polar(1.0, -h.diagonal(i) * t - h.xi(i)) * c(i);
    }
    return a;
}

Eigen::VectorXcd frame_to_interaction(const Eigen::VectorXcd &a, const RotatingHamiltonian &h, double t) {
    if (a.size() != h.diagonal.size()) {
        throw Error(ErrorCode::SizeMismatch, "amplitude vector does not match the Hamiltonian");
    }
    Eigen::VectorXcd c(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        c(i) = std::polar(1.0, h.diagonal(i) * t + h.xi(i)) * a(i);
    }
    return c;
}

Eigen::VectorXcd to_dense(const SparseState &state) {
    if (state.n_qubits() > 30) {
        throw Error(ErrorCode::CapExceeded, "state too large for a dense vector");
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(Eigen::Index{1} << state.n_qubits());
    for (const auto &e : state.entries()) {
        c(static_cast<Eigen::Index>(e.state.to_index())) = e.value;
    }
    return c;
}

SparseState from_dense(const Eigen::VectorXcd &c, double time) {
    const auto n = static_cast<std::size_t>(std::llround(std::log2(static_cast<double>(c.size()))));
    if ((Eigen::Index{1} << n) != c.size()) {
        throw Error(ErrorCode::SizeMismatch, "dense vector length is not a power of two");
    }
    std::vector<Amplitude> entries;
    entries.reserve(static_cast<std::size_t>(c.size()));
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        entries.push_back({BasisState::from_index(n, static_cast<std::uint64_t>(i)), c(i)});
    }
    return SparseState::from_entries(n, std::move(entries), 0.0, time);
}

RunReport run_protocol_exact(const Eigen::VectorXcd &initial, const Protocol &protocol, const ChainConfig &cfg,
                             const ExactOptions &options) {
    cfg.validate();
    if (cfg.n_qubits > options.cap) {
        throw Error(ErrorCode::CapExceeded, "exact engine is capped at " + std::to_string(options.cap) +
                                                " qubits, chain has " + std::to_string(cfg.n_qubits));
    }
    if (initial.size() != (Eigen::Index{1} << cfg.n_qubits)) {
        throw Error(ErrorCode::SizeMismatch, "initial vector does not match chain size");
    }
    struct Cached {
        RotatingHamiltonian h;
        EigenSystem eig;
    };
    std::map<std::tuple<double, double, double>, Cached> cache;
    RunTracker tracker(cfg, protocol.wanted, options.trace);
    Eigen::VectorXcd c = initial;
    double t = 0.0;
    for (std::size_t n = 0; n < protocol.pulses.size(); ++n) {
        const Pulse &pulse = protocol.pulses[n];
        pulse.validate();
        auto key = std::make_tuple(pulse.frequency, pulse.rabi, pulse.phase);
        auto it = cache.find(key);
        if (it == cache.end()) {
            RotatingHamiltonian h = build_rotating_hamiltonian(pulse, cfg, options.cap);
            EigenSystem eig = diagonalize(h);
            it = cache.emplace(key, Cached{std::move(h), std::move(eig)}).first;
        }
        const auto &[h, eig] = it->second;
        Eigen::VectorXcd a = evolve_pulse_exact(frame_to_rotating(c, h, t), eig, pulse.duration);
        t += pulse.duration;
        c = frame_to_interaction(a, h, t);
        tracker.observe(n, pulse, from_dense(c, t));
    }
    return tracker.finish(from_dense(c, t),
                          {"exact", options.config_hash, options.seed, options.doubled_probabilities});
}

TwoLevelBlock two_level_block(const BasisState &state, const Pulse &pulse, const ChainConfig &cfg) {
    const TransitionClass tc = classify_transition(state, pulse.frequency, cfg);
    if (tc.kind == TransitionKind::NonResonant) {
        throw Error(ErrorCode::NonResonant,
                    "state " + state.to_string() + " has no resonant or near-resonant transition under this pulse");
    }
    TwoLevelBlock b;
    b.lower = state;
    b.lower.set(tc.spin, false);
    b.upper = b.lower.flipped(tc.spin);
    double zeeman = 0.0;
    int total = 0;
    int ising = 0;
    for (std::size_t k = 0; k < cfg.n_qubits; ++k) {
        const int s = b.lower.sigma(k);
        zeeman += (cfg.larmor(k) - pulse.frequency) * s;
        total += s;
        if (k + 1 < cfg.n_qubits) {
            ising += s * b.lower.sigma(k + 1);
        }
    }
    b.diag_lower = -0.5 * zeeman - 0.5 * cfg.coupling * ising;
    b.xi_lower = 0.5 * pulse.phase * total;
    b.phase = pulse.phase;
    b.detuning = tc.detuning;
    const double omega = pulse.rabi;
    const double d = b.detuning;
    b.lambda = std::hypot(omega, d);
    b.e_low = b.diag_lower + 0.5 * d - 0.5 * b.lambda;
    b.e_high = b.diag_lower + 0.5 * d + 0.5 * b.lambda;
    // lambda - Delta without cancellation when Delta > 0.
    const double gap = d > 0.0 ? omega * omega / (b.lambda + d) : b.lambda - d;
    const double norm = std::hypot(gap, omega);
    b.v_low = Eigen::Vector2d(omega, gap) / norm;
    b.v_high = Eigen::Vector2d(-gap, omega) / norm;
    return b;
}

Eigen::Vector2cd evolve_two_level_block(const TwoLevelBlock &block, const Eigen::Vector2cd &c, double start_time,
                                        double duration) {
    // Work relative to script-E_m: its phase cancels between the frame
    // change, the evolution and the change back, and dropping it keeps the
    // large Larmor offsets out of the arguments.
    const double xi_upper = block.xi_lower - block.phase;
    const double t1 = start_time + duration;
    const Eigen::Vector2cd a(std::polar(1.0, -block.xi_lower) * c(0),
                             std::polar(1.0, -block.detuning * start_time - xi_upper) * c(1));
    const double mid = 0.5 * block.detuning;
    const cplx low = block.v_low.cast<cplx>().dot(a) * std::polar(1.0, -(mid - 0.5 * block.lambda) * duration);
    const cplx high = block.v_high.cast<cplx>().dot(a) * std::polar(1.0, -(mid + 0.5 * block.lambda) * duration);
    const Eigen::Vector2cd evolved = low * block.v_low.cast<cplx>() + high * block.v_high.cast<cplx>();
    return {std::polar(1.0, block.xi_lower) * evolved(0),
            std::polar(1.0, block.detuning * t1 + xi_upper) * evolved(1)};
}

}  // namespace spinchain

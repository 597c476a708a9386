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


#include "spinchain/classical.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"

namespace spinchain {

using cplx = std::complex<double>;

namespace {

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap || n > 24) {
        throw Error(ErrorCode::CapExceeded,
                    "classical engine is capped at " + std::to_string(cap) + " qubits, chain has " + std::to_string(n));
    }
}

Eigen::VectorXd energies(const ChainConfig &cfg) {
    const Eigen::Index dim = Eigen::Index{1} << cfg.n_qubits;
    Eigen::VectorXd e(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        e(i) = basis_energy(BasisState::from_index(cfg.n_qubits, static_cast<std::uint64_t>(i)), cfg);
    }
    return e;
}

Eigen::VectorXcd as_complex(const OscillatorState &s) {
    Eigen::VectorXcd z(s.x.size());
    z.real() = s.x;
    z.imag() = s.p;
    return z;
}

// (V z)_n for the lab-frame pulse coupling at time t.
Eigen::VectorXcd apply_coupling(const Eigen::VectorXcd &z, std::size_t n_qubits, const Pulse &pulse, double t) {
    const cplx up = -0.5 * pulse.rabi * std::polar(1.0, -(pulse.frequency * t + pulse.phase));
    const cplx down = std::conj(up);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        for (std::size_t k = 0; k < n_qubits; ++k) {
            const Eigen::Index j = i ^ (Eigen::Index{1} << k);
            // Row i is the upper state of the pair when its bit k is set.
            out(i) += (((i >> k) & 1) ? up : down) * z(j);
        }
    }
    return out;
}

}  // namespace

OscillatorState to_classical(const Eigen::VectorXcd &c, double time) {
    const auto n = static_cast<std::size_t>(std::llround(std::log2(static_cast<double>(std::max<Eigen::Index>(c.size(), 1)))));
    if ((Eigen::Index{1} << n) != c.size()) {
        throw Error(ErrorCode::SizeMismatch, "amplitude vector length is not a power of two");
    }
    OscillatorState s;
    s.n_qubits = n;
    s.x = std::numbers::sqrt2 * c.real();
    s.p = std::numbers::sqrt2 * c.imag();
    s.time = time;
    return s;
}

Eigen::VectorXcd to_quantum(const OscillatorState &s) {
    return as_complex(s) / std::numbers::sqrt2;
}

OscillatorState from_interaction(const Eigen::VectorXcd &amplitudes, const ChainConfig &cfg, double time) {
    if (amplitudes.size() != (Eigen::Index{1} << cfg.n_qubits)) {
        throw Error(ErrorCode::SizeMismatch, "amplitude vector does not match chain size");
    }
    const Eigen::VectorXd e = energies(cfg);
    Eigen::VectorXcd c(amplitudes.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        c(i) = std::polar(1.0, -e(i) * time) * amplitudes(i);
    }
    return to_classical(c, time);
}

Eigen::VectorXcd to_interaction(const OscillatorState &s, const ChainConfig &cfg) {
    if (s.n_qubits != cfg.n_qubits) {
        throw Error(ErrorCode::SizeMismatch, "oscillator state does not match chain size");
    }
    const Eigen::VectorXd e = energies(cfg);
    Eigen::VectorXcd c = to_quantum(s);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        c(i) *= std::polar(1.0, e(i) * s.time);
    }
    return c;
}

double classical_norm(const OscillatorState &s) {
    return (s.x.squaredNorm() + s.p.squaredNorm()) / kOscillatorNorm;
}

double classical_energy(const OscillatorState &s, const ChainConfig &cfg, const Pulse *pulse) {
    const Eigen::VectorXd e = energies(cfg);
    double h = 0.5 * (e.array() * (s.x.array().square() + s.p.array().square())).sum();
    if (pulse != nullptr) {
        const Eigen::VectorXcd z = as_complex(s);
        h += 0.5 * z.dot(apply_coupling(z, s.n_qubits, *pulse, s.time)).real();
    }
    return h;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> hamilton_rhs(const OscillatorState &s, const ChainConfig &cfg,
                                                         const Pulse *pulse) {
    const Eigen::VectorXd e = energies(cfg);
    Eigen::VectorXd dx = e.cwiseProduct(s.p);
    Eigen::VectorXd dp = -e.cwiseProduct(s.x);
    if (pulse != nullptr) {
        const Eigen::VectorXcd vz = apply_coupling(as_complex(s), s.n_qubits, *pulse, s.time);
        dx += vz.imag();
        dp -= vz.real();
    }
    return {dx, dp};
}

OscillatorState free_evolution(const OscillatorState &s, const ChainConfig &cfg, double duration) {
    const Eigen::VectorXd e = energies(cfg);
    OscillatorState out = s;
    for (Eigen::Index i = 0; i < s.x.size(); ++i) {
        const double c = std::cos(e(i) * duration);
        const double sn = std::sin(e(i) * duration);
        out.x(i) = c * s.x(i) + sn * s.p(i);
        out.p(i) = -sn * s.x(i) + c * s.p(i);
    }
    out.time = s.time + duration;
    return out;
}

OscillatorState integrate_pulse(const OscillatorState &s, const Pulse &pulse, const ChainConfig &cfg,
                                const IntegrateOptions &options) {
    check_cap(cfg.n_qubits, options.cap);
    pulse.validate();
    if (s.n_qubits != cfg.n_qubits) {
        throw Error(ErrorCode::SizeMismatch, "oscillator state does not match chain size");
    }
    if (!(options.phase_step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "phase step must be positive");
    }
    const std::size_t n = cfg.n_qubits;
    const Eigen::Index dim = Eigen::Index{1} << n;

    // Co-rotating variables z_n = sqrt2 exp(i E_n t) c_n carry only the
    // coupling. Its matrix element between single-flip neighbours is
    //   -Omega/2 exp(i theta_n) exp(-i theta_k),  theta_n = script-E_n t + xi_n,
    // with script-E the rotating-frame diagonal, so one pass over the flips
    // of exp(-i theta) z evaluates the whole product.
    const RotatingHamiltonian h = build_rotating_hamiltonian(pulse, cfg, options.cap);
    const Eigen::VectorXd e = energies(cfg);
    double fastest = 0.5 * pulse.rabi * static_cast<double>(n);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            fastest = std::max(fastest, std::abs(h.diagonal(i) - h.diagonal(i ^ (Eigen::Index{1} << k))));
        }
    }
    const auto steps = static_cast<std::size_t>(std::ceil(pulse.duration * fastest / options.phase_step));
    const double step = pulse.duration / static_cast<double>(std::max<std::size_t>(steps, 1));

    const double t0 = s.time;
    Eigen::VectorXcd z(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        z(i) = std::polar(1.0, e(i) * t0) * cplx{s.x(i), s.p(i)};
    }

    Eigen::VectorXcd rot(dim);  // exp(-i theta(t))
    auto set_rotation = [&](double t) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            rot(i) = std::polar(1.0, -(h.diagonal(i) * t + h.xi(i)));
        }
    };
    Eigen::VectorXcd half_step(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        half_step(i) = std::polar(1.0, -0.5 * h.diagonal(i) * step);
    }
    const double coupling = -0.5 * pulse.rabi;
    Eigen::VectorXcd g(dim);
    // Hamilton's equations for the coupling part: dx = Im(W z), dp = -Re(W z),
    // i.e. dz/dt = -i W z.
    auto rhs = [&](const Eigen::VectorXcd &zz, const Eigen::VectorXcd &r) {
        g = r.cwiseProduct(zz);
        Eigen::VectorXcd out(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            cplx sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += g(i ^ (Eigen::Index{1} << k));
            }
            const cplx wz = coupling * std::conj(r(i)) * sum;
            out(i) = cplx{wz.imag(), -wz.real()};
        }
        return out;
    };

    for (std::size_t j = 0; j < steps; ++j) {
        const double t = t0 + step * static_cast<double>(j);
        if (j % 256 == 0) {
            set_rotation(t);
        }
        const Eigen::VectorXcd r0 = rot;
        const Eigen::VectorXcd r1 = rot.cwiseProduct(half_step);
        const Eigen::VectorXcd r2 = r1.cwiseProduct(half_step);
        const Eigen::VectorXcd k1 = rhs(z, r0);
        const Eigen::VectorXcd k2 = rhs(z + 0.5 * step * k1, r1);
        const Eigen::VectorXcd k3 = rhs(z + 0.5 * step * k2, r1);
        const Eigen::VectorXcd k4 = rhs(z + step * k3, r2);
        z += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rot = r2;
    }

    OscillatorState out;
    out.n_qubits = n;
    out.time = t0 + pulse.duration;
    out.x.resize(dim);
    out.p.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const cplx c = std::polar(1.0, -e(i) * out.time) * z(i);
        out.x(i) = c.real();
        out.p(i) = c.imag();
    }
    const double drift = std::abs(classical_norm(out) - classical_norm(s));
    if (drift > options.norm_tolerance) {
        throw Error(ErrorCode::StepTooLarge, "norm drifted by " + std::to_string(drift) + " over pulse '" +
                                                 pulse.label + "'; reduce the phase step");
    }
    return out;
}

OscillatorState integrate(const OscillatorState &s, const Protocol &protocol, const ChainConfig &cfg,
                          const IntegrateOptions &options) {
    OscillatorState cur = s;
    const double start = classical_norm(s);
    for (const auto &pulse : protocol.pulses) {
        cur = integrate_pulse(cur, pulse, cfg, options);
        const double drift = std::abs(classical_norm(cur) - start);
        if (drift > options.norm_tolerance) {
            throw Error(ErrorCode::StepTooLarge,
                        "norm drifted by " + std::to_string(drift) + " over the protocol; reduce the phase step");
        }
    }
    return cur;
}

RunReport run_protocol_classical(const Eigen::VectorXcd &initial, const Protocol &protocol, const ChainConfig &cfg,
                                 const ClassicalRunOptions &options) {
    cfg.validate();
    check_cap(cfg.n_qubits, options.integrate.cap);
    OscillatorState s = from_interaction(initial, cfg, 0.0);
    const double start = classical_norm(s);
    RunTracker tracker(cfg, protocol.wanted, options.trace);
    for (std::size_t n = 0; n < protocol.pulses.size(); ++n) {
        s = integrate_pulse(s, protocol.pulses[n], cfg, options.integrate);
        const double drift = std::abs(classical_norm(s) - start);
        if (drift > options.integrate.norm_tolerance) {
            throw Error(ErrorCode::StepTooLarge,
                        "norm drifted by " + std::to_string(drift) + " over the protocol; reduce the phase step");
        }
        tracker.observe(n, protocol.pulses[n], from_dense(to_interaction(s, cfg), s.time));
    }
    return tracker.finish(from_dense(to_interaction(s, cfg), s.time),
                          {"classical", options.config_hash, options.seed, options.doubled_probabilities});
}

}  // namespace spinchain

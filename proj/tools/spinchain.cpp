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


// spinchain command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "spinchain/analysis.hpp"
#include "spinchain/classical.hpp"
#include "spinchain/config.hpp"
#include "spinchain/error.hpp"
#include "spinchain/error_model.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/perturbative.hpp"
#include "spinchain/pulse_design.hpp"
#include "spinchain/run_report.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace spinchain;

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::string> engine;
    std::optional<double> cutoff;
    bool doubled = false;
    std::optional<std::uint64_t> seed;
    bool trace = false;
};

void add_common(CLI::App *sub, CommonOptions &o) {
    sub->add_option("--config", o.config_path, "run-config document")->required();
    sub->add_option("--out", o.out, "output directory (overrides output.dir)");
    sub->add_option("--engine", o.engine, "perturbative | exact | classical");
    sub->add_option("--cutoff", o.cutoff, "probability cutoff");
    sub->add_flag("--doubled-probabilities", o.doubled, "report probabilities doubled");
    sub->add_option("--seed", o.seed, "seed for protocol jitter");
    sub->add_flag("--trace", o.trace, "record a per-pulse trace");
}

RunConfig load(const CommonOptions &o) {
    RunConfig c = load_run_config(o.config_path);
    if (o.out) {
        c.out_dir = *o.out;
    }
    if (o.engine) {
        try {
            c.engine = engine_from_name(*o.engine);
        } catch (const Error &e) {
            throw Error(ErrorCode::MalformedConfig, std::string("--engine: ") + e.what());
        }
    }
    if (o.cutoff) {
        c.chain.cutoff = *o.cutoff;
        try {
            c.chain.validate();
        } catch (const Error &e) {
            throw Error(ErrorCode::MalformedConfig, std::string("--cutoff: ") + e.what());
        }
    }
    if (o.seed) {
        c.seed = *o.seed;
    }
    c.doubled_probabilities = c.doubled_probabilities || o.doubled;
    c.trace = c.trace || o.trace;
    return c;
}

fs::path prepare_dir(const std::string &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error(ErrorCode::Io, "cannot create output directory '" + dir + "'");
    }
    return fs::path(dir);
}

template <class Writer>
void write_file(const fs::path &path, Writer &&writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
    }
}

Eigen::VectorXcd dense_initial(const BasisState &s, std::size_t cap) {
    if (s.size() > cap) {
        throw Error(ErrorCode::CapExceeded,
                    std::to_string(s.size()) + " qubits exceed the dense cap of " + std::to_string(cap));
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(Eigen::Index{1} << s.size());
    c(static_cast<Eigen::Index>(s.to_index())) = 1.0;
    return c;
}

RunReport run_engine(const RunConfig &c, const Protocol &proto, EngineKind engine) {
    const BasisState start = initial_state(c);
    const std::string hash = config_hash(c);
    switch (engine) {
    case EngineKind::Perturbative: {
        RunOptions o;
        o.trace = c.trace;
        o.doubled_probabilities = c.doubled_probabilities;
        o.workers = c.workers;
        o.seed = c.seed;
        o.config_hash = hash;
        return run_protocol(SparseState::basis(start), proto, c.chain, o);
    }
    case EngineKind::Exact: {
        ExactOptions o;
        o.cap = c.exact_cap;
        o.trace = c.trace;
        o.doubled_probabilities = c.doubled_probabilities;
        o.seed = c.seed;
        o.config_hash = hash;
        return run_protocol_exact(dense_initial(start, c.exact_cap), proto, c.chain, o);
    }
    case EngineKind::Classical: {
        ClassicalRunOptions o;
        o.integrate.cap = c.classical_cap;
        o.integrate.phase_step = c.phase_step;
        o.trace = c.trace;
        o.doubled_probabilities = c.doubled_probabilities;
        o.seed = c.seed;
        o.config_hash = hash;
        return run_protocol_classical(dense_initial(start, c.classical_cap), proto, c.chain, o);
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown engine");
}

int cmd_simulate(const CommonOptions &o, std::optional<EngineKind> forced) {
    RunConfig c = load(o);
    if (forced) {
        c.engine = *forced;
    }
    const Protocol proto = build_protocol(c);
    const RunReport r = run_engine(c, proto, c.engine);
    const fs::path dir = prepare_dir(c.out_dir);
    write_file(dir / "report.json", [&](std::ostream &out) { out << report_to_json(r) << '\n'; });
    write_file(dir / "unwanted.csv", [&](std::ostream &out) { write_unwanted_csv(out, r); });
    write_file(dir / "amplitudes.csv", [&](std::ostream &out) { write_amplitudes_csv(out, r); });
    if (c.trace) {
        write_file(dir / "trace.csv", [&](std::ostream &out) { write_trace_csv(out, r); });
    }
    json summary{{"engine", r.provenance.engine},
                 {"config_hash", r.provenance.config_hash},
                 {"pulses", proto.size()},
                 {"tracked", r.final_state.size()},
                 {"unwanted", r.unwanted.size()},
                 {"unwanted_probability", r.reported(r.unwanted_probability())},
                 {"leaked", r.reported(r.leaked)},
                 {"out", c.out_dir}};
    json wanted = json::array();
    for (const auto &w : r.wanted) {
        wanted.push_back({{"state", w.to_string()}, {"probability", r.reported(std::norm(r.amplitude(w)))}});
    }
    summary["wanted"] = wanted;
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_design(const CommonOptions &o) {
    const RunConfig c = load(o);
    const Protocol proto = build_protocol(c);
    const fs::path dir = prepare_dir(c.out_dir);
    write_file(dir / "protocol.json", [&](std::ostream &out) { out << protocol_to_json(proto) << '\n'; });
    write_file(dir / "pulses.csv", [&](std::ostream &out) {
        out << "index,label,frequency,rabi,duration,phase,target_spin,ground_detuning\r\n";
        for (std::size_t i = 0; i < proto.size(); ++i) {
            const Pulse &p = proto.pulses[i];
            out << i << ',' << p.label << ',' << format_double(p.frequency) << ',' << format_double(p.rabi) << ','
                << format_double(p.duration) << ',' << format_double(p.phase) << ',';
            if (i < proto.target_spins.size() && proto.target_spins[i]) {
                out << *proto.target_spins[i];
            }
            out << ',';
            if (i < proto.ground_detunings.size()) {
                out << format_double(proto.ground_detunings[i]);
            }
            out << "\r\n";
        }
    });
    std::cout << json{{"pulses", proto.size()},
                      {"rabi", proto.pulses.size() > 1 ? proto.pulses[1].rabi : proto.pulses.at(0).rabi},
                      {"out", c.out_dir}}
                     .dump()
              << '\n';
    return 0;
}

std::vector<double> grid_values(const GridSpec &g, bool geometric) {
    return geometric ? geometric_grid(g.min, g.max, g.count) : linear_grid(g.min, g.max, g.count);
}

int cmd_sweep(const CommonOptions &o) {
    const RunConfig c = load(o);
    const SweepSpec spec = c.sweep.value_or(SweepSpec{});
    const auto spacings = grid_values(spec.spacing, true);
    const auto rabis = grid_values(spec.rabi, false);
    std::vector<std::size_t> sizes = spec.n_qubits;
    if (sizes.empty()) {
        sizes.push_back(c.chain.n_qubits);
    }
    const fs::path dir = prepare_dir(c.out_dir);
    json runs = json::array();
    for (std::size_t n : sizes) {
        ChainConfig cfg = c.chain;
        cfg.n_qubits = n;
        for (double thr : spec.thresholds) {
            const RegionMap map = sweep_threshold_regions(cfg, spacings, rabis, thr, c.workers);
            const std::string tag = "N" + std::to_string(n) + "_P" + format_double(thr);
            write_file(dir / ("regions_" + tag + ".csv"), [&](std::ostream &out) { write_region_csv(out, map); });
            write_file(dir / ("intervals_" + tag + ".csv"), [&](std::ostream &out) { write_interval_csv(out, map); });
            json entry{{"n_qubits", n}, {"threshold", thr}, {"accepted_cells", map.accepted_count()}};
            if (const auto row = map.first_accepted_row()) {
                entry["min_accepted_spacing"] = spacings[*row];
            }
            runs.push_back(entry);
        }
    }
    std::cout << json{{"sweeps", runs}, {"out", c.out_dir}}.dump() << '\n';
    return 0;
}

// Exact-engine error next to the formula on a (delta omega, Omega) list.
int cmd_compare(const CommonOptions &o) {
    const RunConfig c = load(o);
    if (!c.compare) {
        throw Error(ErrorCode::MalformedConfig, "compare: section missing");
    }
    struct Point {
        double spacing, rabi, exact = 0, formula = 0;
    };
    std::vector<Point> points;
    for (double dw : c.compare->spacings) {
        for (double om : c.compare->rabis) {
            points.push_back({dw, om});
        }
    }
    const std::size_t workers = std::clamp<std::size_t>(c.workers, 1, std::max<std::size_t>(points.size(), 1));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        try {
            for (std::size_t i = w; i < points.size(); i += workers) {
                Point &p = points[i];
                RunConfig rc = c;
                rc.chain.larmor_spacing = p.spacing;
                rc.chain.base_larmor = 10.0 * p.spacing;
                rc.protocol.rabi = p.rabi;
                rc.protocol.k.reset();
                rc.protocol.file.reset();
                rc.protocol.equal_epsilon = true;
                rc.trace = false;
                const Protocol proto = build_protocol(rc);
                const RunReport r = run_engine(rc, proto, EngineKind::Exact);
                double wanted = 0;
                for (const auto &s : r.wanted) {
                    wanted += std::norm(r.amplitude(s));
                }
                p.exact = 1.0 - wanted;
                p.formula = total_error(rc.chain, p.rabi).total;
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    std::vector<std::thread> threads;
    for (std::size_t w = 1; w < workers; ++w) {
        threads.emplace_back(work, w);
    }
    work(0);
    for (auto &t : threads) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    const fs::path dir = prepare_dir(c.out_dir);
    write_file(dir / "compare.csv", [&](std::ostream &out) {
        out << "spacing,rabi,exact,formula,ratio\r\n";
        for (const auto &p : points) {
            out << format_double(p.spacing) << ',' << format_double(p.rabi) << ',' << format_double(p.exact) << ','
                << format_double(p.formula) << ',' << format_double(p.exact / p.formula) << "\r\n";
        }
    });
    std::cout << json{{"points", points.size()}, {"out", c.out_dir}}.dump() << '\n';
    return 0;
}

int cmd_analyze(const CommonOptions &o, const std::optional<std::string> &report_path) {
    const RunConfig c = load(o);
    const fs::path dir = prepare_dir(c.out_dir);
    const fs::path src = report_path ? fs::path(*report_path) : dir / "report.json";
    std::ifstream in(src, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot read report '" + src.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const RunReport r = report_from_json(ss.str());
    if (r.unwanted.empty()) {
        std::cout << json{{"unwanted", 0}, {"bands", 0}}.dump() << '\n';
        return 0;
    }
    const BandSummary bands = band_classify(r.unwanted);
    const auto profiles = excitation_profiles(r.unwanted, c.chain);
    write_file(dir / "bands.csv", [&](std::ostream &out) {
        out << "band,count,min,max,median,histogram\r\n";
        for (std::size_t b = 0; b < bands.bands.size(); ++b) {
            const Band &band = bands.bands[b];
            out << b << ',' << band.count << ',' << format_double(r.reported(band.min)) << ','
                << format_double(r.reported(band.max)) << ',' << format_double(r.reported(band.median)) << ",\"";
            for (std::size_t i = 0; i < band.histogram.size(); ++i) {
                out << (i ? " " : "") << band.histogram[i];
            }
            out << "\"\r\n";
        }
    });
    // One row per record in generation order: the data behind an
    // order-of-generation probability plot.
    write_file(dir / "generation.csv", [&](std::ostream &out) {
        out << "order,state,probability,generation_pulse,band\r\n";
        for (std::size_t i = 0; i < r.unwanted.size(); ++i) {
            const auto &u = r.unwanted[i];
            out << i << ',' << u.state.to_string() << ',' << format_double(r.reported(u.probability)) << ','
                << u.generation_pulse << ',' << bands.assignment[i] << "\r\n";
        }
    });
    write_file(dir / "excitation.csv", [&](std::ostream &out) {
        out << "state,flips,relative_energy,energy_class\r\n";
        for (const auto &p : profiles) {
            out << p.bits << ',' << p.flips << ',' << format_double(p.relative_energy) << ','
                << energy_class_name(p.energy_class) << "\r\n";
        }
    });
    json jb = json::array();
    for (const auto &b : bands.bands) {
        jb.push_back({{"count", b.count}, {"median", r.reported(b.median)}});
    }
    std::cout << json{{"unwanted", r.unwanted.size()},
                      {"bands", jb},
                      {"largest_gap_decades", bands.largest_gap_decades},
                      {"out", c.out_dir}}
                     .dump()
              << '\n';
    return 0;
}

void report_error(const std::string &code, const std::string &message, const std::optional<std::string> &out_dir) {
    const json record{{"error", {{"code", code}, {"message", message}}}};
    std::cerr << record.dump() << '\n';
    if (out_dir) {
        std::error_code ec;
        fs::create_directories(*out_dir, ec);
        std::ofstream f(fs::path(*out_dir) / "error.json");
        if (f) {
            f << record.dump(2) << '\n';
        }
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spin-chain quantum computer simulator"};
    app.require_subcommand(1);
    CommonOptions opts;
    std::optional<std::string> report_path;

    auto *simulate = app.add_subcommand("simulate", "run a protocol with the configured engine");
    auto *simulate_exact = app.add_subcommand("simulate-exact", "run a protocol with the exact engine");
    auto *classical = app.add_subcommand("classical", "run a protocol with the classical-oscillator engine");
    auto *design = app.add_subcommand("design", "write the designed protocol");
    auto *sweep = app.add_subcommand("sweep", "error-formula threshold regions on a grid");
    auto *compare = app.add_subcommand("compare", "exact-engine error against the error formula");
    auto *analyze = app.add_subcommand("analyze", "bands and excitation profiles of a saved report");
    for (auto *s : {simulate, simulate_exact, classical, design, sweep, compare, analyze}) {
        add_common(s, opts);
    }
    analyze->add_option("--report", report_path, "report to analyze (default <out>/report.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    std::optional<std::string> out_dir = opts.out;
    try {
        if (simulate->parsed()) {
            return cmd_simulate(opts, std::nullopt);
        }
        if (simulate_exact->parsed()) {
            return cmd_simulate(opts, EngineKind::Exact);
        }
        if (classical->parsed()) {
            return cmd_simulate(opts, EngineKind::Classical);
        }
        if (design->parsed()) {
            return cmd_design(opts);
        }
        if (sweep->parsed()) {
            return cmd_sweep(opts);
        }
        if (compare->parsed()) {
            return cmd_compare(opts);
        }
        return cmd_analyze(opts, report_path);
    } catch (const Error &e) {
        report_error(std::string(error_code_name(e.code())), e.what(), out_dir);
    } catch (const std::exception &e) {
        report_error("internal", e.what(), out_dir);
    }
    return 2;
}

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


#include "spinchain/run_report.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include <json.hpp>

#include "spinchain/error.hpp"

namespace spinchain {

using nlohmann::json;

double RunReport::unwanted_probability() const {
    double total = 0.0;
    for (const auto &e : final_state.entries()) {
        if (std::find(wanted.begin(), wanted.end(), e.state) == wanted.end()) {
            total += std::norm(e.value);
        }
    }
    return total;
}

RunTracker::RunTracker(const ChainConfig &cfg, std::vector<BasisState> wanted, bool trace)
    : cfg_(cfg), wanted_(std::move(wanted)), trace_(trace) {}

bool RunTracker::is_wanted(const BasisState &s) const {
    return std::find(wanted_.begin(), wanted_.end(), s) != wanted_.end();
}

void RunTracker::observe(std::size_t pulse_index, const Pulse &pulse, const SparseState &state) {
    std::unordered_map<BasisState, bool> now;
    std::size_t above = 0;
    for (const auto &e : state.entries()) {
        if (is_wanted(e.state) || std::norm(e.value) < cfg_.cutoff) {
            continue;
        }
        ++above;
        now.emplace(e.state, true);
        first_crossing_.try_emplace(e.state, pulse_index);
    }
    std::size_t dips = 0;
    for (const auto &[s, flag] : above_) {
        if (flag && !now.count(s)) {
            ++dips;
        }
    }
    above_ = std::move(now);
    if (trace_) {
        TraceRow row;
        row.pulse = pulse_index;
        row.label = pulse.label;
        row.time = state.time();
        row.tracked = state.size();
        row.norm = state.probability_sum();
        row.leaked = state.leaked();
        for (const auto &w : wanted_) {
            row.wanted_probabilities.push_back(std::norm(state.amplitude(w)));
        }
        row.unwanted_above_cutoff = above;
        row.dips = dips;
        rows_.push_back(std::move(row));
    }
}

RunReport RunTracker::finish(SparseState final_state, Provenance provenance) const {
    RunReport r;
    r.wanted = wanted_;
    r.cutoff = cfg_.cutoff;
    r.leaked = final_state.leaked();
    r.trace = rows_;
    r.provenance = std::move(provenance);
    for (const auto &e : final_state.entries()) {
        const double p = std::norm(e.value);
        if (is_wanted(e.state) || p < cfg_.cutoff) {
            continue;
        }
        UnwantedRecord rec;
        rec.state = e.state;
        rec.probability = p;
        auto it = first_crossing_.find(e.state);
        rec.generation_pulse = it == first_crossing_.end() ? 0 : it->second;
        rec.energy = basis_energy(e.state, cfg_);
        rec.flips = e.state.count();
        r.unwanted.push_back(std::move(rec));
    }
    std::stable_sort(r.unwanted.begin(), r.unwanted.end(), [](const UnwantedRecord &a, const UnwantedRecord &b) {
        if (a.generation_pulse != b.generation_pulse) {
            return a.generation_pulse < b.generation_pulse;
        }
        return a.state < b.state;
    });
    r.final_state = std::move(final_state);
    return r;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string report_to_json(const RunReport &report) {
    json j;
    j["engine"] = report.provenance.engine;
    j["config_hash"] = report.provenance.config_hash;
    j["seed"] = report.provenance.seed;
    j["doubled_probabilities"] = report.provenance.doubled_probabilities;
    j["n_qubits"] = report.final_state.n_qubits();
    j["cutoff"] = report.cutoff;
    j["leaked"] = report.leaked;
    j["final_leaked"] = report.final_state.leaked();
    j["time"] = report.final_state.time();
    j["wanted"] = json::array();
    for (const auto &w : report.wanted) {
        j["wanted"].push_back(w.to_string());
    }
    j["amplitudes"] = json::array();
    for (const auto &e : report.final_state.entries()) {
        j["amplitudes"].push_back({e.state.to_string(), e.value.real(), e.value.imag()});
    }
    j["unwanted"] = json::array();
    for (const auto &u : report.unwanted) {
        j["unwanted"].push_back({{"state", u.state.to_string()},
                                 {"probability", report.reported(u.probability)},
                                 {"generation_pulse", u.generation_pulse},
                                 {"energy", u.energy},
                                 {"flips", u.flips}});
    }
    j["trace"] = json::array();
    for (const auto &t : report.trace) {
        json wanted = json::array();
        for (double p : t.wanted_probabilities) {
            wanted.push_back(report.reported(p));
        }
        j["trace"].push_back({{"pulse", t.pulse},
                              {"label", t.label},
                              {"time", t.time},
                              {"tracked", t.tracked},
                              {"norm", t.norm},
                              {"leaked", t.leaked},
                              {"wanted_probabilities", wanted},
                              {"unwanted_above_cutoff", t.unwanted_above_cutoff},
                              {"dips", t.dips}});
    }
    return j.dump(2);
}

RunReport report_from_json(const std::string &text) {
    RunReport r;
    try {
        const json j = json::parse(text);
        r.provenance.engine = j.at("engine").get<std::string>();
        r.provenance.config_hash = j.at("config_hash").get<std::string>();
        r.provenance.seed = j.at("seed").get<std::uint64_t>();
        r.provenance.doubled_probabilities = j.at("doubled_probabilities").get<bool>();
        const double scale = r.provenance.doubled_probabilities ? 0.5 : 1.0;
        const auto n = j.at("n_qubits").get<std::size_t>();
        r.cutoff = j.at("cutoff").get<double>();
        r.leaked = j.at("leaked").get<double>();
        for (const auto &w : j.at("wanted")) {
            r.wanted.push_back(BasisState::from_string(w.get<std::string>()));
        }
        std::vector<Amplitude> amps;
        for (const auto &a : j.at("amplitudes")) {
            amps.push_back({BasisState::from_string(a.at(0).get<std::string>()),
                            {a.at(1).get<double>(), a.at(2).get<double>()}});
        }
        r.final_state =
            SparseState::from_entries(n, std::move(amps), j.at("final_leaked").get<double>(), j.at("time").get<double>());
        for (const auto &u : j.at("unwanted")) {
            UnwantedRecord rec;
            rec.state = BasisState::from_string(u.at("state").get<std::string>());
            rec.probability = scale * u.at("probability").get<double>();
            rec.generation_pulse = u.at("generation_pulse").get<std::size_t>();
            rec.energy = u.at("energy").get<double>();
            rec.flips = u.at("flips").get<std::size_t>();
            r.unwanted.push_back(std::move(rec));
        }
        for (const auto &t : j.at("trace")) {
            TraceRow row;
            row.pulse = t.at("pulse").get<std::size_t>();
            row.label = t.at("label").get<std::string>();
            row.time = t.at("time").get<double>();
            row.tracked = t.at("tracked").get<std::size_t>();
            row.norm = t.at("norm").get<double>();
            row.leaked = t.at("leaked").get<double>();
            for (const auto &p : t.at("wanted_probabilities")) {
                row.wanted_probabilities.push_back(scale * p.get<double>());
            }
            row.unwanted_above_cutoff = t.at("unwanted_above_cutoff").get<std::size_t>();
            row.dips = t.at("dips").get<std::size_t>();
            r.trace.push_back(std::move(row));
        }
    } catch (const json::exception &e) {
        throw Error(ErrorCode::MalformedConfig, std::string("bad run report: ") + e.what());
    }
    return r;
}

namespace {

// RFC 4180: quote only when needed.
std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_unwanted_csv(std::ostream &out, const RunReport &report) {
    out << "state,probability,generation_pulse,energy,flips\r\n";
    for (const auto &u : report.unwanted) {
        out << u.state.to_string() << ',' << format_double(report.reported(u.probability)) << ','
            << u.generation_pulse << ',' << format_double(u.energy) << ',' << u.flips << "\r\n";
    }
}

void write_trace_csv(std::ostream &out, const RunReport &report) {
    out << "pulse,label,time,tracked,norm,leaked";
    for (std::size_t i = 0; i < report.wanted.size(); ++i) {
        out << ",wanted_" << i;
    }
    out << ",unwanted_above_cutoff,dips\r\n";
    for (const auto &t : report.trace) {
        out << t.pulse << ',' << csv_field(t.label) << ',' << format_double(t.time) << ',' << t.tracked << ','
            << format_double(t.norm) << ',' << format_double(t.leaked);
        for (double p : t.wanted_probabilities) {
            out << ',' << format_double(report.reported(p));
        }
        out << ',' << t.unwanted_above_cutoff << ',' << t.dips << "\r\n";
    }
}

void write_amplitudes_csv(std::ostream &out, const RunReport &report) {
    out << "state,probability,re,im\r\n";
    for (const auto &e : report.final_state.entries()) {
        out << e.state.to_string() << ',' << format_double(report.reported(std::norm(e.value))) << ','
            << format_double(e.value.real()) << ',' << format_double(e.value.imag()) << "\r\n";
    }
}

}  // namespace spinchain

// Copyright 2026 The robust-pulse Authors
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

// pulsetool: synthesize and analyse composite pulse sequences.
//
// Exit codes: 0 success, 2 usage or parse error, 3 verification failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rpulse/io.hpp"
#include "rpulse/rpulse.hpp"

namespace {

using rpulse::ParseError;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

constexpr double kProductTolerance = 1e-11;
constexpr double kFdStep = 1e-5;
constexpr double kFdTolerance = 1e-4;

struct Options {
    std::string family;
    std::string theta = "pi";
    std::string phi = "0";
    std::string winding;
    std::string input;
    std::string output;
    std::string format;
    std::string eps_range = "-0.1,0.1";
    std::string eps_prime_range = "-0.1,0.1";
    int res = 201;
    double threshold = 1 - 1e-4;
    std::string axis = "eps";
    std::string ladder;
    std::string phases;
    std::vector<std::string> require;
};

void fail_usage(const std::string &kind, const std::string &message) {
    ordered_json e;
    e["error"] = kind;
    e["message"] = message;
    std::cerr << e.dump() << '\n';
}

std::pair<double, double> parse_range(const std::string &text) {
    const auto v = rpulse::parse_angle_list(text);
    if (v.size() != 2 || !(v[0] < v[1])) throw ParseError("range must be 'lo,hi' with lo < hi, got '" + text + "'");
    return {v[0], v[1]};
}

rpulse::Winding parse_winding(const std::string &text) {
    rpulse::Winding w{};
    std::istringstream in(text);
    std::string item;
    int k = 0;
    while (std::getline(in, item, ',')) {
        if (k == 3) throw ParseError("winding needs three integers, got '" + text + "'");
        std::size_t used = 0;
        try {
            w[k] = std::stoi(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw ParseError("bad winding entry '" + item + "'");
        ++k;
    }
    if (k != 3) throw ParseError("winding needs three integers, got '" + text + "'");
    return w;
}

double parse_theta(const std::string &text) {
    const double t = rpulse::parse_angle(text);
    if (t < 0.0) throw ParseError("theta must be nonnegative, got '" + text + "'");
    return t;
}

std::string read_all(std::istream &in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

/// Sequence from --input (file or "-") or from --family/--theta/--phi/--winding.
rpulse::PulseSequence load_sequence(const Options &o) {
    if (!o.input.empty()) {
        if (o.input == "-") return rpulse::sequence_from_json(read_all(std::cin));
        std::ifstream f(o.input, std::ios::binary);
        if (!f) throw ParseError("cannot open input file '" + o.input + "'");
        return rpulse::sequence_from_json(read_all(f));
    }
    if (o.family.empty()) throw ParseError("either --family or --input is required");
    const double theta = parse_theta(o.theta);
    const double phi = rpulse::parse_angle(o.phi);
    std::optional<rpulse::Winding> w;
    if (!o.winding.empty()) w = parse_winding(o.winding);
    if (o.family == "scrofulous-in-corpse")
        return w ? rpulse::scrofulous_in_corpse(theta, phi, *w) : rpulse::scrofulous_in_corpse(theta, phi);
    const auto fam = rpulse::family_from_string(o.family);
    if (!fam || *fam == rpulse::Family::Custom) throw ParseError("unknown family '" + o.family + "'");
    return rpulse::synthesize(*fam, theta, phi, w);
}

unsigned thread_cap() {
    const char *env = std::getenv("PULSE_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    std::size_t used = 0;
    long v = -1;
    try {
        v = std::stol(env, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != std::string(env).size() || v < 0) throw ParseError(std::string("PULSE_THREADS must be a nonnegative integer, got '") + env + "'");
    return static_cast<unsigned>(v);
}

/// Writes to --output or stdout.
void emit(const Options &o, const std::string &text) {
    if (o.output.empty() || o.output == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw ParseError("cannot open output file '" + o.output + "'");
    f << text;
}

std::string dump(const ordered_json &j) { return j.dump(2) + "\n"; }

ordered_json target_json(const rpulse::PulseSequence &seq) {
    ordered_json t;
    t["theta"] = seq.target_theta;
    t["phi"] = seq.target_phi;
    return t;
}

std::set<std::string> declared_channels(rpulse::Family f) {
    using rpulse::Family;
    switch (f) {
        case Family::Corpse: return {"off_resonance"};
        case Family::Scrofulous:
        case Family::BB1: return {"pulse_length"};
        case Family::CisCccp:
        case Family::AlwayJones: return {"pulse_length", "off_resonance", "combined"};
        default: return {};
    }
}

int cmd_synth(const Options &o) {
    emit(o, rpulse::to_json(load_sequence(o)));
    return kExitOk;
}

int cmd_verify(const Options &o) {
    const auto seq = load_sequence(o);
    if (seq.empty()) throw ParseError("sequence has no pulses");
    std::set<std::string> required = declared_channels(seq.family);
    if (!o.require.empty()) required = {o.require.begin(), o.require.end()};

    const double fid = rpulse::fidelity(seq.ideal_product(), seq.target());
    const double infid = rpulse::infidelity(seq.ideal_product(), seq.target());
    bool pass = infid <= kProductTolerance;

    ordered_json rep;
    rep["family"] = std::string(rpulse::to_string(seq.family));
    rep["target"] = target_json(seq);
    rep["pulses"] = seq.size();
    rep["product_fidelity"] = fid;
    rep["product_exact"] = infid <= kProductTolerance;

    struct Named {
        const char *name;
        rpulse::ErrorChannel channel;
    };
    const Named channels[] = {{"pulse_length", rpulse::ErrorChannel::pulse_length(1.0)},
                              {"off_resonance", rpulse::ErrorChannel::off_resonance(1.0)},
                              {"combined", rpulse::ErrorChannel::combined(1.0, 1.0)}};
    double fd_max = 0.0;
    ordered_json ch;
    for (const auto &c : channels) {
        const auto dw = rpulse::accumulate_delta_w(seq, c.channel).delta_w;
        const auto fd = rpulse::first_order_oracle(seq, c.channel, kFdStep);
        const double diff = rpulse::distance(dw.matrix(), fd.matrix());
        fd_max = std::max(fd_max, diff);
        const bool robust = dw.norm() <= rpulse::kRobustTolerance;
        const bool req = required.count(c.name) > 0;
        if (req && !robust) pass = false;
        ordered_json e;
        e["norm"] = dw.norm();
        e["robust"] = robust;
        e["required"] = req;
        e["fd_difference"] = diff;
        ch[c.name] = e;
    }
    rep["channels"] = ch;
    ordered_json fd;
    fd["step"] = kFdStep;
    fd["max_difference"] = fd_max;
    fd["pass"] = fd_max <= kFdTolerance;
    rep["fd_agreement"] = fd;
    if (fd_max > kFdTolerance) pass = false;
    rep["pass"] = pass;
    emit(o, dump(rep));
    return pass ? kExitOk : kExitVerify;
}

int cmd_landscape(const Options &o) {
    const auto seq = load_sequence(o);
    if (seq.empty()) throw ParseError("sequence has no pulses");
    if (o.res < 2) throw ParseError("--res must be at least 2");
    rpulse::GridSpec spec;
    spec.eps_range = parse_range(o.eps_range);
    spec.eps_prime_range = parse_range(o.eps_prime_range);
    spec.eps_points = spec.eps_prime_points = o.res;
    const auto grid = rpulse::landscape(seq, spec, thread_cap());

    const std::string format = o.format.empty() ? "csv" : o.format;
    if (format == "csv") {
        std::ostringstream os;
        rpulse::write_landscape_csv(os, grid);
        emit(o, os.str());
        return kExitOk;
    }
    ordered_json j;
    j["family"] = std::string(rpulse::to_string(seq.family));
    j["target"] = target_json(seq);
    j["eps"] = grid.eps;
    j["eps_prime"] = grid.eps_prime;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < grid.rows(); ++i)
        rows.push_back(std::vector<double>(grid.values.begin() + static_cast<std::ptrdiff_t>(i * grid.cols()),
                                           grid.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * grid.cols())));
    j["fidelity"] = rows;
    j["threshold"] = o.threshold;
    j["robust_area"] = rpulse::robust_area(grid, o.threshold);
    emit(o, dump(j));
    return kExitOk;
}

int cmd_phase(const Options &o) {
    const auto seq = load_sequence(o);
    const auto rep = rpulse::phase_decomposition(seq);
    ordered_json j;
    j["family"] = std::string(rpulse::to_string(seq.family));
    j["target"] = target_json(seq);
    j["degenerate"] = rep.degenerate;
    ordered_json states = ordered_json::array();
    for (const auto &s : rep.states) {
        ordered_json e;
        e["total"] = s.total;
        e["dynamical"] = s.dynamical;
        e["geometric"] = s.geometric;
        e["state"] = {{s.state[0].real(), s.state[0].imag()}, {s.state[1].real(), s.state[1].imag()}};
        states.push_back(e);
    }
    j["states"] = states;
    emit(o, dump(j));
    return kExitOk;
}

int cmd_scaling(const Options &o) {
    const auto seq = load_sequence(o);
    rpulse::ScalingAxis axis;
    if (o.axis == "eps") axis = rpulse::ScalingAxis::Eps;
    else if (o.axis == "eps-prime") axis = rpulse::ScalingAxis::EpsPrime;
    else if (o.axis == "diagonal") axis = rpulse::ScalingAxis::Diagonal;
    else throw ParseError("--axis must be eps, eps-prime or diagonal");
    std::vector<double> ladder;
    if (!o.ladder.empty()) ladder = rpulse::parse_angle_list(o.ladder);
    const auto fit = rpulse::infidelity_scaling(seq, axis, ladder);
    ordered_json j;
    j["family"] = std::string(rpulse::to_string(seq.family));
    j["target"] = target_json(seq);
    j["axis"] = o.axis;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    ordered_json pts = ordered_json::array();
    for (std::size_t k = 0; k < fit.strengths.size(); ++k)
        pts.push_back({{"strength", fit.strengths[k]}, {"infidelity", fit.infidelities[k]}});
    j["points"] = pts;
    j["dropped"] = fit.dropped;
    emit(o, dump(j));
    return kExitOk;
}

int cmd_reduce(const Options &o) {
    if (o.phases.empty()) throw ParseError("--phases is required");
    const auto phases = rpulse::parse_angle_list(o.phases);
    const auto r = rpulse::aj_product_reduce(phases);
    rpulse::PulseSequence direct;
    for (double f : phases) direct.pulses.push_back(rpulse::Pulse::xy(rpulse::kPi, f));
    ordered_json j;
    j["k"] = phases.size();
    j["kind"] = r.z_axis() ? "z" : "xy";
    const auto &m = r.vector();
    j["rotation_vector"] = {m[0], m[1], m[2]};
    if (!r.z_axis()) {
        j["theta"] = r.theta();
        j["phi"] = r.phi();
    }
    j["fidelity_vs_product"] = rpulse::fidelity(rpulse::rotation(m), direct.ideal_product());
    emit(o, dump(j));
    return kExitOk;
}

void add_sequence_options(CLI::App *c, Options &o, bool allow_input) {
    c->add_option("--family", o.family,
                  "plain, corpse, scrofulous, cis-cccp, bb1, alway-jones or scrofulous-in-corpse");
    c->add_option("--theta", o.theta, "target angle, e.g. pi, pi/2, 1.5")->capture_default_str();
    c->add_option("--phi", o.phi, "target azimuth")->capture_default_str();
    c->add_option("--winding", o.winding, "CORPSE winding numbers n1,n2,n3");
    if (allow_input) c->add_option("--input", o.input, "sequence JSON file, '-' for stdin");
    c->add_option("-o,--output", o.output, "output file (default stdout)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Composite pulse synthesis and robustness analysis"};
    app.require_subcommand(1, 1);
    Options o;

    auto *synth = app.add_subcommand("synth", "synthesize a sequence and print its JSON");
    add_sequence_options(synth, o, false);

    auto *verify = app.add_subcommand("verify", "first-order robustness report");
    add_sequence_options(verify, o, true);
    verify->add_option("--require", o.require, "channels that must be robust: pulse_length, off_resonance, combined")
        ->check(CLI::IsMember({"pulse_length", "off_resonance", "combined"}));

    auto *land = app.add_subcommand("landscape", "fidelity over an (eps, eps') grid");
    add_sequence_options(land, o, true);
    land->add_option("--eps-range", o.eps_range, "lo,hi")->capture_default_str();
    land->add_option("--eps-prime-range", o.eps_prime_range, "lo,hi")->capture_default_str();
    land->add_option("--res", o.res, "points per axis")->capture_default_str();
    land->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    land->add_option("--threshold", o.threshold, "robust-area threshold (json output)")->capture_default_str();

    auto *phase = app.add_subcommand("phase", "dynamical and geometric phases of the cyclic states");
    add_sequence_options(phase, o, true);

    auto *scaling = app.add_subcommand("scaling", "log-log infidelity slope along one error axis");
    add_sequence_options(scaling, o, true);
    scaling->add_option("--axis", o.axis, "eps, eps-prime or diagonal")->capture_default_str();
    scaling->add_option("--ladder", o.ladder, "comma-separated strengths (at least 5)");

    auto *reduce = app.add_subcommand("reduce", "reduce a product of xy-plane pi pulses");
    reduce->add_option("--phases", o.phases, "comma-separated azimuths")->required();
    reduce->add_option("-o,--output", o.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        fail_usage("usage", e.what());
        return kExitUsage;
    }

    try {
        if (*synth) return cmd_synth(o);
        if (*verify) return cmd_verify(o);
        if (*land) return cmd_landscape(o);
        if (*phase) return cmd_phase(o);
        if (*scaling) return cmd_scaling(o);
        if (*reduce) return cmd_reduce(o);
    } catch (const rpulse::SynthesisError &e) {
        fail_usage("synthesis", e.what());
    } catch (const rpulse::ParseError &e) {
        fail_usage("parse", e.what());
    } catch (const rpulse::ArgumentError &e) {
        fail_usage("argument", e.what());
    } catch (const rpulse::ValidationError &e) {
        fail_usage("validation", e.what());
    }
    return kExitUsage;
}

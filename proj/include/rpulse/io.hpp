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

#ifndef RPULSE_IO_HPP
#define RPULSE_IO_HPP

/* Text formats.
 *
 * Sequence JSON:
 *   {"family": "corpse", "target": {"theta": ..., "phi": ...},
 *    "winding": [n1, n2, n3],            (optional)
 *    "pulses": [{"theta": ..., "phi": ...}, ...]}
 * A rotation about z is written {"axis": "z", "angle": ...}.
 * Angles are radians printed with 17 significant digits.
 *
 * Landscape CSV: header "eps,eps_prime,fidelity", one row per cell, rows
 * ordered by eps then eps', 17 significant digits, LF endings.
 */

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rpulse/analysis.hpp"
#include "rpulse/errors.hpp"
#include "rpulse/sequence.hpp"

namespace rpulse {

struct ParseError : ArgumentError {
    using ArgumentError::ArgumentError;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline double parse_real(std::string_view s, std::string_view whole) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("cannot parse angle '" + std::string(whole) + "'");
    return v;
}

/// "pi", "3pi", "3*pi", "2.5", "-pi"
inline double parse_factor(std::string_view s, std::string_view whole) {
    s = trim(s);
    double sign = 1.0;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        if (s.front() == '-') sign = -1.0;
        s.remove_prefix(1);
        s = trim(s);
    }
    const auto pos = s.find("pi");
    if (pos == std::string_view::npos) return sign * parse_real(s, whole);
    if (pos + 2 != s.size()) throw ParseError("cannot parse angle '" + std::string(whole) + "'");
    std::string_view coef = trim(s.substr(0, pos));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    const double c = coef.empty() ? 1.0 : parse_real(coef, whole);
    return sign * c * kPi;
}

}  // namespace detail

/// Parses decimal radians or a pi expression: "pi/2", "-3pi/4", "7*pi/3", "0.25".
inline double parse_angle(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return detail::parse_factor(text, text);
    const double num = detail::parse_factor(text.substr(0, slash), text);
    const double den = detail::parse_real(text.substr(slash + 1), text);
    if (den == 0.0) throw ParseError("division by zero in angle '" + std::string(text) + "'");
    return num / den;
}

/// Comma-separated list of angles.
inline std::vector<double> parse_angle_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse_angle(text.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::string format_real(double x) { return fmt::format("{:.17g}", x); }

inline std::string to_json(const PulseSequence &seq) {
    std::string s = fmt::format("{{\n  \"family\": \"{}\",\n  \"target\": {{\"theta\": {}, \"phi\": {}}},\n",
                                to_string(seq.family), format_real(seq.target_theta), format_real(seq.target_phi));
    if (seq.winding) s += fmt::format("  \"winding\": [{}, {}, {}],\n", (*seq.winding)[0], (*seq.winding)[1], (*seq.winding)[2]);
    s += "  \"pulses\": [";
    for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
        const auto &p = seq.pulses[i];
        s += i == 0 ? "\n" : ",\n";
        if (p.z_axis())
            s += fmt::format("    {{\"axis\": \"z\", \"angle\": {}}}", format_real(p.vector()[2]));
        else
            s += fmt::format("    {{\"theta\": {}, \"phi\": {}}}", format_real(p.theta()), format_real(p.phi()));
    }
    s += seq.pulses.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return s;
}

/// Reads the sequence JSON schema. Throws ParseError on malformed input.
inline PulseSequence sequence_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("malformed sequence JSON: ") + e.what());
    }
    try {
        PulseSequence seq;
        const auto fam = family_from_string(j.at("family").get<std::string>());
        if (!fam) throw ParseError("unknown family '" + j.at("family").get<std::string>() + "'");
        seq.family = *fam;
        seq.target_theta = j.at("target").at("theta").get<double>();
        seq.target_phi = j.at("target").at("phi").get<double>();
        if (j.contains("winding")) {
            const auto w = j.at("winding").get<std::vector<int>>();
            if (w.size() != 3) throw ParseError("winding must have three entries");
            seq.winding = Winding{w[0], w[1], w[2]};
        }
        for (const auto &p : j.at("pulses")) {
            if (p.contains("axis")) {
                if (p.at("axis").get<std::string>() != "z") throw ParseError("pulse axis must be \"z\"");
                seq.pulses.push_back(Pulse::z(p.at("angle").get<double>()));
            } else {
                seq.pulses.push_back(Pulse::xy(p.at("theta").get<double>(), p.at("phi").get<double>()));
            }
        }
        return seq;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("invalid sequence JSON: ") + e.what());
    }
}

inline void write_landscape_csv(std::ostream &os, const LandscapeGrid &g) {
    os << "eps,eps_prime,fidelity\n";
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            os << format_real(g.eps[i]) << ',' << format_real(g.eps_prime[j]) << ',' << format_real(g.at(i, j)) << '\n';
}

}  // namespace rpulse

#endif

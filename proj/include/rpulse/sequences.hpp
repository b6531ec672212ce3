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

#ifndef RPULSE_SEQUENCES_HPP
#define RPULSE_SEQUENCES_HPP

/* Composite pulse synthesizers.
 *
 * Every sequence lists its pulses in time order. All targets are rotations
 * theta (cos phi, sin phi, 0); synthesis is done at phi = 0 and the result is
 * rotated rigidly about z, so every family is exactly axis-covariant.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "rpulse/errors.hpp"
#include "rpulse/sequence.hpp"
#include "rpulse/su2.hpp"

namespace rpulse {

inline constexpr Winding kCorpseDefaultWinding{1, 2, 1};
inline constexpr Winding kCisCccpDefaultWinding{1, 1, 0};

namespace detail {

inline void shift_phases(PulseSequence &seq, double phi) {
    for (auto &p : seq.pulses)
        if (!p.z_axis()) p = Pulse::xy(p.theta(), wrap_azimuth(p.phi() + phi));
    seq.target_phi = phi;
}

}  // namespace detail

inline PulseSequence plain(double theta, double phi) {
    if (!(theta >= 0.0 && theta < 2.0 * kTwoPi)) throw ArgumentError("plain: theta must lie in [0, 4pi)");
    PulseSequence seq;
    seq.pulses.push_back(Pulse::xy(theta, wrap_azimuth(phi)));
    seq.target_theta = theta;
    seq.target_phi = phi;
    seq.family = Family::Plain;
    return seq;
}

/// kappa = arcsin(sin(theta/2) / 2)
inline double corpse_kappa(double theta) { return std::asin(0.5 * std::sin(0.5 * theta)); }

/// CORPSE segment angles (theta/2 - kappa + 2 n1 pi, -2 kappa + 2 n2 pi, theta/2 - kappa + 2 n3 pi).
/// Throws WindingError if any is negative.
inline std::array<double, 3> corpse_angles(double theta, const Winding &n) {
    const double kappa = corpse_kappa(theta);
    const std::array<double, 3> a{0.5 * theta - kappa + kTwoPi * n[0], -2.0 * kappa + kTwoPi * n[1],
                                  0.5 * theta - kappa + kTwoPi * n[2]};
    for (int i = 0; i < 3; ++i) {
        // theta = 0 gives exact zeros; tolerate rounding just below zero
        if (a[i] < -1e-12) throw WindingError(i + 1, a[i]);
    }
    return a;
}

/// Three pulses about phi, phi + pi, phi. Compensates off-resonance error;
/// with n1 - n2 + n3 = 0 the residual pulse-length error equals that of the
/// target itself.
inline PulseSequence corpse(double theta, double phi, const Winding &n = kCorpseDefaultWinding) {
    if (!(theta >= 0.0 && theta <= kTwoPi)) throw ArgumentError("corpse: theta must lie in [0, 2pi]");
    const auto a = corpse_angles(theta, n);
    PulseSequence seq;
    seq.pulses = {Pulse::xy(std::max(0.0, a[0]), 0.0), Pulse::xy(std::max(0.0, a[1]), kPi),
                  Pulse::xy(std::max(0.0, a[2]), 0.0)};
    seq.target_theta = theta;
    seq.family = Family::Corpse;
    seq.winding = n;
    detail::shift_phases(seq, phi);
    return seq;
}

/// Solved SCROFULOUS parameters for a target about x (phi = 0).
struct ScrofulousSolution {
    double theta1;       // outer pulse angle (theta3 = theta1)
    double phi1;         // outer pulse azimuth (phi3 = phi1), in (0, pi)
    double phi2;         // azimuth of the central pi pulse
    double residual;     // norm of the residual vector at the root
    bool negated;        // true if the product is -target (solved for 2pi - theta about -x)
};

namespace detail {

/* Unknowns p = (theta1, phi1, phi2). Residuals: the SU(2) coefficients of
 * R(m1) R(pi, phi2) R(m1) minus those of rotation(theta x), plus the
 * first-order constraint theta1 cos(phi1 - phi2) + pi/2.
 */
struct ScrofulousSystem {
    double a_target;
    double b_target;

    std::array<double, 5> residual(const std::array<double, 3> &p) const {
        const Unitary2 r1 = rotation(RotationVector::in_plane(p[0], p[1]));
        const Unitary2 r2 = rotation(RotationVector::in_plane(kPi, p[2]));
        const auto [a, b] = su2_coefficients((r1 * r2 * r1).matrix());
        return {a.real() - a_target, b[0].real() - b_target, b[1].real(), b[2].real(),
                p[0] * std::cos(p[1] - p[2]) + 0.5 * kPi};
    }
};

inline double norm5(const std::array<double, 5> &r) {
    double s = 0;
    for (double x : r) s += x * x;
    return std::sqrt(s);
}

/// Solves the 3x3 system A x = b by Gaussian elimination with partial pivoting.
inline std::optional<std::array<double, 3>> solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-300) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (int r = c + 1; r < 3; ++r) {
            const double f = a[r][c] / a[c][c];
            for (int k = c; k < 3; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < 3; ++k) s -= a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return x;
}

/// Damped Gauss-Newton from one starting point. Returns the final point and residual norm.
inline std::pair<std::array<double, 3>, double> gauss_newton(const ScrofulousSystem &sys, std::array<double, 3> p) {
    double rn = norm5(sys.residual(p));
    double mu = 1e-10;
    for (int iter = 0; iter < 100 && rn > 1e-14; ++iter) {
        const auto r = sys.residual(p);
        std::array<std::array<double, 3>, 5> jac{};
        for (int k = 0; k < 3; ++k) {
            constexpr double h = 1e-7;
            auto pp = p, pm = p;
            pp[k] += h;
            pm[k] -= h;
            const auto rp = sys.residual(pp), rm = sys.residual(pm);
            for (int i = 0; i < 5; ++i) jac[i][k] = (rp[i] - rm[i]) / (2 * h);
        }
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b)
                for (int i = 0; i < 5; ++i) jtj[a][b] += jac[i][a] * jac[i][b];
            for (int i = 0; i < 5; ++i) jtr[a] -= jac[i][a] * r[i];
        }
        bool improved = false;
        for (int tries = 0; tries < 30 && !improved; ++tries) {
            auto damped = jtj;
            for (int a = 0; a < 3; ++a) damped[a][a] += mu * (1.0 + jtj[a][a]);
            const auto step = solve3(damped, jtr);
            if (!step) {
                mu *= 10;
                continue;
            }
            std::array<double, 3> q{p[0] + (*step)[0], p[1] + (*step)[1], p[2] + (*step)[2]};
            const double qn = norm5(sys.residual(q));
            if (qn < rn) {
                p = q;
                rn = qn;
                mu = std::max(1e-12, mu / 10);
                improved = true;
            } else {
                mu *= 10;
            }
        }
        if (!improved) break;
    }
    return {p, rn};
}

/// Root of the SCROFULOUS system for rotation(theta x). Empty if no start converges.
inline std::optional<ScrofulousSolution> solve_scrofulous_x(double theta, int &starts_tried, double &best) {
    const ScrofulousSystem sys{std::cos(0.5 * theta), std::sin(0.5 * theta)};
    const double stretch = 0.5 * kPi + 0.5 * theta;
    const std::array<double, 5> theta_guesses{stretch, kPi, 0.5 * kPi + 0.05, 2.5, 4.0};
    const std::array<double, 4> phi_guesses{kPi / 3, kPi / 6, kPi / 2, 2 * kPi / 3};
    for (double t0 : theta_guesses) {
        for (double f0 : phi_guesses) {
            ++starts_tried;
            const double c = std::clamp(-0.5 * kPi / t0, -1.0, 1.0);
            const auto [p, rn] = gauss_newton(sys, {t0, f0, f0 - std::acos(c)});
            best = std::min(best, rn);
            if (rn > 1e-12 || p[0] < 0.5 * kPi - 1e-9 || p[0] > kTwoPi) continue;
            double phi1 = wrap_phase(p[1]);
            double phi2 = wrap_phase(p[2]);
            // mirror phi -> -phi maps a root to a root; keep phi1 in (0, pi)
            if (phi1 < 0) {
                phi1 = -phi1;
                phi2 = -phi2;
            }
            if (phi1 <= 0.0 || phi1 >= kPi) continue;
            return ScrofulousSolution{p[0], phi1, wrap_azimuth(phi2), rn, false};
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Finds (theta1, phi1, phi2) for a target rotation(theta x). If no root
/// reproduces the target exactly (theta beyond about 3.84 rad), the
/// equivalent gate -rotation((2pi - theta) x) is tried; its phases are
/// reported relative to x, so `negated` solutions have phi1 in (pi, 2pi).
inline ScrofulousSolution solve_scrofulous(double theta) {
    if (!(theta > 0.0 && theta < kTwoPi)) throw ArgumentError("scrofulous: theta must lie in (0, 2pi)");
    int starts = 0;
    double best = std::numeric_limits<double>::infinity();
    if (auto s = detail::solve_scrofulous_x(theta, starts, best)) return *s;
    if (auto s = detail::solve_scrofulous_x(kTwoPi - theta, starts, best)) {
        s->phi1 = wrap_azimuth(s->phi1 + kPi);
        s->phi2 = wrap_azimuth(s->phi2 + kPi);
        s->negated = true;
        return *s;
    }
    std::ostringstream msg;
    msg << "scrofulous: no root for theta = " << theta << " after " << starts << " starts (best residual " << best
        << ")";
    throw SynthesisError(msg.str(), best, starts);
}

/// A pi pulse between two identical pulses; compensates pulse-length error.
inline PulseSequence scrofulous(double theta, double phi) {
    const ScrofulousSolution s = solve_scrofulous(theta);
    PulseSequence seq;
    seq.pulses = {Pulse::xy(s.theta1, s.phi1), Pulse::xy(kPi, s.phi2), Pulse::xy(s.theta1, s.phi1)};
    seq.target_theta = theta;
    seq.family = Family::Scrofulous;
    detail::shift_phases(seq, phi);
    return seq;
}

/// SCROFULOUS whose three pulses are each replaced by a CORPSE. Cancels
/// pulse-length and off-resonance errors together. The shared winding must
/// satisfy n1 - n2 + n3 = 0.
inline PulseSequence cis_cccp(double theta, double phi, const Winding &n = kCisCccpDefaultWinding) {
    if (n[0] - n[1] + n[2] != 0)
        throw ArgumentError("cis_cccp: winding must satisfy n1 - n2 + n3 = 0");
    const PulseSequence outer = scrofulous(theta, phi);
    PulseSequence seq;
    for (const auto &p : outer.pulses) {
        const PulseSequence inner = corpse(p.theta(), p.phi(), n);
        seq.pulses.insert(seq.pulses.end(), inner.pulses.begin(), inner.pulses.end());
    }
    seq.target_theta = theta;
    seq.target_phi = phi;
    seq.family = Family::CisCccp;
    seq.winding = n;
    return seq;
}

/// phi_pl = arccos(-theta / (4 pi))
inline double bb1_phase(double theta) { return std::acos(-theta / (2.0 * kTwoPi)); }

/// Target pulse followed by pi, 2pi, pi at phi + (phi_pl, 3 phi_pl, phi_pl).
inline PulseSequence bb1(double theta, double phi) {
    if (!(theta > 0.0 && theta <= kTwoPi)) throw ArgumentError("bb1: theta must lie in (0, 2pi]");
    const double f = bb1_phase(theta);
    PulseSequence seq;
    seq.pulses = {Pulse::xy(theta, 0.0), Pulse::xy(kPi, f), Pulse::xy(kTwoPi, wrap_azimuth(3 * f)),
                  Pulse::xy(kPi, f)};
    seq.target_theta = theta;
    seq.family = Family::BB1;
    detail::shift_phases(seq, phi);
    return seq;
}

/// Alway-Jones pi pulse: U(pi), then the BB1 block (3 pulses), then the
/// off-resonance block pi pulses at (pi - a, -a, pi + a, a), a = arccos(-1/4).
/// Both identity blocks are exact at zero error.
inline PulseSequence alway_jones(double phi_axis) {
    const double a = std::acos(-0.25);
    PulseSequence seq;
    seq.pulses = {Pulse::xy(kPi, 0.0),
                  Pulse::xy(kPi, a),
                  Pulse::xy(kTwoPi, wrap_azimuth(3 * a)),
                  Pulse::xy(kPi, a),
                  Pulse::xy(kPi, wrap_azimuth(kPi - a)),
                  Pulse::xy(kPi, wrap_azimuth(-a)),
                  Pulse::xy(kPi, wrap_azimuth(kPi + a)),
                  Pulse::xy(kPi, a)};
    seq.target_theta = kPi;
    seq.family = Family::AlwayJones;
    detail::shift_phases(seq, phi_axis);
    return seq;
}

/// Pulses [first, last) of `seq` as a Custom sequence (target left as identity).
inline PulseSequence sub_sequence(const PulseSequence &seq, std::size_t first, std::size_t last) {
    if (first > last || last > seq.size()) throw ArgumentError("sub_sequence: bad range");
    PulseSequence out;
    out.pulses.assign(seq.pulses.begin() + static_cast<std::ptrdiff_t>(first),
                      seq.pulses.begin() + static_cast<std::ptrdiff_t>(last));
    return out;
}

/// Product of xy-plane pi pulses at the given azimuths (time order):
/// even count -> rotation (0, 0, 2 Theta) with Theta = sum_j (phi_2j - phi_2j-1 + pi);
/// odd count -> a pi pulse at phi_k - Theta_{k-1}. Exact, including global phase.
inline Pulse aj_product_reduce(std::span<const double> phases) {
    if (phases.empty()) throw ArgumentError("aj_product_reduce: empty phase list");
    double big_theta = 0.0;
    const std::size_t pairs = phases.size() / 2;
    for (std::size_t j = 0; j < pairs; ++j) big_theta += phases[2 * j + 1] - phases[2 * j] + kPi;
    if (phases.size() % 2 == 0) return Pulse::z(2.0 * big_theta);
    return Pulse::xy(kPi, wrap_azimuth(phases.back() - big_theta));
}

/// Negative control: CORPSE(theta, phi) whose pulses are each replaced by a
/// SCROFULOUS. Segment angles are first reduced to [0, pi] by
/// R(a n) = -R((2pi - a)(-n)), so the product matches up to global sign.
/// Cancels pulse-length error but not off-resonance error.
inline PulseSequence scrofulous_in_corpse(double theta, double phi, const Winding &n = kCisCccpDefaultWinding) {
    const PulseSequence outer = corpse(theta, phi, n);
    PulseSequence seq;
    for (const auto &p : outer.pulses) {
        double a = std::fmod(p.theta(), kTwoPi);
        double f = p.phi();
        if (a > kPi) {
            a = kTwoPi - a;
            f = wrap_azimuth(f + kPi);
        }
        if (a == 0.0) continue;
        const PulseSequence inner = scrofulous(a, f);
        seq.pulses.insert(seq.pulses.end(), inner.pulses.begin(), inner.pulses.end());
    }
    seq.target_theta = theta;
    seq.target_phi = phi;
    seq.family = Family::Custom;
    seq.winding = n;
    return seq;
}

/// Dispatch by family for the command-line tool and tests.
inline PulseSequence synthesize(Family family, double theta, double phi, std::optional<Winding> winding = {}) {
    switch (family) {
        case Family::Plain: return plain(theta, phi);
        case Family::Corpse: return corpse(theta, phi, winding.value_or(kCorpseDefaultWinding));
        case Family::Scrofulous: return scrofulous(theta, phi);
        case Family::CisCccp: return cis_cccp(theta, phi, winding.value_or(kCisCccpDefaultWinding));
        case Family::BB1: return bb1(theta, phi);
        case Family::AlwayJones: return alway_jones(phi);
        case Family::Custom: break;
    }
    throw ArgumentError("synthesize: custom sequences cannot be synthesized");
}

}  // namespace rpulse

#endif

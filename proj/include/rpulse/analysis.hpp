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

#ifndef RPULSE_ANALYSIS_HPP
#define RPULSE_ANALYSIS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rpulse/error_model.hpp"
#include "rpulse/sequence.hpp"
#include "rpulse/su2.hpp"

namespace rpulse {

/// F = |Tr(U^dag R(m^k + dm^k) ... R(m^1 + dm^1))| / 2 for the combined channel.
inline double fidelity_under_error(const PulseSequence &seq, double eps, double eps_prime) {
    return fidelity(seq.target(), finite_difference_propagator(seq, ErrorChannel::combined(eps, eps_prime)));
}

/// 1 - F evaluated without cancellation.
inline double infidelity_under_error(const PulseSequence &seq, double eps, double eps_prime) {
    return infidelity(seq.target(), finite_difference_propagator(seq, ErrorChannel::combined(eps, eps_prime)));
}

/// Fidelity sampled on a rectangle; values are row-major with rows indexed by eps.
struct LandscapeGrid {
    std::vector<double> eps;
    std::vector<double> eps_prime;
    std::vector<double> values;
    Family family = Family::Custom;

    double at(std::size_t i, std::size_t j) const { return values[i * eps_prime.size() + j]; }
    std::size_t rows() const { return eps.size(); }
    std::size_t cols() const { return eps_prime.size(); }
};

/// n equally spaced points from lo to hi inclusive; symmetric ranges with odd
/// n contain 0 exactly.
inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw ArgumentError("linspace: need at least 2 points");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        out[i] = lo * (1.0 - t) + hi * t;
    }
    out.back() = hi;
    return out;
}

struct GridSpec {
    std::pair<double, double> eps_range{-0.1, 0.1};
    std::pair<double, double> eps_prime_range{-0.1, 0.1};
    int eps_points = 201;
    int eps_prime_points = 201;
};

/// Fidelity over the grid. Rows are split across `threads` workers (0 = one
/// per hardware thread); each cell is computed independently, so the result
/// does not depend on the thread count.
inline LandscapeGrid landscape(const PulseSequence &seq, const GridSpec &spec = {}, unsigned threads = 1) {
    if (spec.eps_points < 2 || spec.eps_prime_points < 2) throw ArgumentError("landscape: resolution must be >= 2");
    LandscapeGrid g;
    g.family = seq.family;
    g.eps = linspace(spec.eps_range.first, spec.eps_range.second, spec.eps_points);
    g.eps_prime = linspace(spec.eps_prime_range.first, spec.eps_prime_range.second, spec.eps_prime_points);
    g.values.assign(g.rows() * g.cols(), 0.0);

    auto fill_rows = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < g.rows(); i += stride)
            for (std::size_t j = 0; j < g.cols(); ++j)
                g.values[i * g.cols() + j] = fidelity_under_error(seq, g.eps[i], g.eps_prime[j]);
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, g.rows()));
    if (threads <= 1) {
        fill_rows(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(fill_rows, t, threads);
    }
    return g;
}

/// Fraction of cells with F >= threshold.
inline double robust_area(const LandscapeGrid &grid, double threshold) {
    if (grid.values.empty()) return 0.0;
    const auto n = std::count_if(grid.values.begin(), grid.values.end(), [&](double f) { return f >= threshold; });
    return static_cast<double>(n) / static_cast<double>(grid.values.size());
}

enum class ScalingAxis { Eps, EpsPrime, Diagonal };

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<double> strengths;    // points used in the fit
    std::vector<double> infidelities;
    std::vector<double> dropped;      // strengths whose 1 - F was below 1e-14
};

/// Default strength ladder within [1e-3, 1e-2].
inline std::vector<double> default_ladder() { return {1e-3, 2e-3, 4e-3, 8e-3, 1e-2}; }

/// Least-squares slope of log(1 - F) against log(strength) along one axis of
/// the (eps, eps') plane. About 2 for an uncompensated axis, about 4 when the
/// first-order error vanishes along it.
inline ScalingFit infidelity_scaling(const PulseSequence &seq, ScalingAxis axis,
                                     std::span<const double> strengths = {}) {
    std::vector<double> ladder(strengths.begin(), strengths.end());
    if (ladder.empty()) ladder = default_ladder();
    if (ladder.size() < 5) throw ArgumentError("infidelity_scaling: need at least 5 strengths");
    for (double s : ladder)
        if (!(s > 0.0)) throw ArgumentError("infidelity_scaling: strengths must be positive");

    ScalingFit fit;
    for (double s : ladder) {
        const double e = axis == ScalingAxis::EpsPrime ? 0.0 : s;
        const double ep = axis == ScalingAxis::Eps ? 0.0 : s;
        const double inf = infidelity_under_error(seq, e, ep);
        if (inf < 1e-14) {
            fit.dropped.push_back(s);
            continue;
        }
        fit.strengths.push_back(s);
        fit.infidelities.push_back(inf);
    }
    const std::size_t n = fit.strengths.size();
    if (n < 2) throw ArgumentError("infidelity_scaling: fewer than 2 points above the precision floor");

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = std::log(fit.strengths[k]);
        const double y = std::log(fit.infidelities[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double dn = static_cast<double>(n);
    const double cxx = sxx - sx * sx / dn;
    const double cxy = sxy - sx * sy / dn;
    const double cyy = syy - sy * sy / dn;
    fit.slope = cxy / cxx;
    fit.intercept = (sy - fit.slope * sx) / dn;
    fit.r_squared = cyy > 0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
    return fit;
}

struct CyclicPhase {
    double total;       // gamma
    double dynamical;   // gamma_d
    double geometric;   // gamma - gamma_d
    std::array<cplx, 2> state;
};

struct PhaseReport {
    std::array<CyclicPhase, 2> states;
    bool degenerate = false;
};

/// Dynamical and geometric (Aharonov-Anandan) phases of the two cyclic states
/// of the ideal product. With piecewise-constant drive the energy expectation
/// is constant during each pulse, so
///   gamma_d = - sum_i <psi(t_{i-1})| W^i |psi(t_{i-1})>.
inline PhaseReport phase_decomposition(const PulseSequence &seq) {
    if (seq.empty()) throw ArgumentError("phase_decomposition: empty sequence");
    const Unitary2 u = seq.ideal_product();
    const auto eig = eig_unitary(u);
    PhaseReport rep;
    rep.degenerate = std::abs(wrap_phase(eig[0].phase - eig[1].phase)) < 1e-10;
    for (int a = 0; a < 2; ++a) {
        std::array<cplx, 2> psi = eig[a].vector;
        double dyn = 0.0;
        for (const auto &p : seq.pulses) {
            dyn -= expectation(generator(p.vector()), psi);
            psi = act(rotation(p.vector()), psi);
        }
        rep.states[a] = CyclicPhase{eig[a].phase, wrap_phase(dyn), wrap_phase(eig[a].phase - dyn), eig[a].vector};
    }
    return rep;
}

}  // namespace rpulse

#endif

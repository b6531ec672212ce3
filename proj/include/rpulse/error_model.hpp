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

#ifndef RPULSE_ERROR_MODEL_HPP
#define RPULSE_ERROR_MODEL_HPP

/* First-order sensitivity of a pulse sequence to systematic control errors.
 *
 * A pulse R(m) is perturbed to R(m + dm). To first order
 *   R(m + dm) = R(m) - i R(m) dW_I,   dW_I = int_0^1 e^{ixW} dW e^{-ixW} dx,
 * with W = m.tau and dW = dm.tau. For a sequence with partial products
 * V^i = R(m^i)...R(m^1) the accumulated generator is
 *   DW = sum_i V^{i-1}^dag dW_I^i V^{i-1},
 * and the perturbed gate is U - i U DW + O(err^2). DW = 0 is the
 * first-order robustness condition.
 */

#include <array>
#include <optional>
#include <vector>

#include "rpulse/quadrature.hpp"
#include "rpulse/sequence.hpp"
#include "rpulse/su2.hpp"

namespace rpulse {

using Mat3 = std::array<std::array<double, 3>, 3>;

enum class ErrorKind { PulseLength, OffResonance, Combined, GeneralLinear };

/// Systematic error: dm = eps m + eps' |m| e_z, or dm_mu = f_mu + f_mu_nu m_nu.
struct ErrorChannel {
    ErrorKind kind = ErrorKind::Combined;
    double eps = 0.0;
    double eps_prime = 0.0;
    Vec3 constant{};
    Mat3 linear{};

    static ErrorChannel pulse_length(double eps) { return {ErrorKind::PulseLength, eps, 0.0, {}, {}}; }
    static ErrorChannel off_resonance(double eps_prime) { return {ErrorKind::OffResonance, 0.0, eps_prime, {}, {}}; }
    static ErrorChannel combined(double eps, double eps_prime) {
        return {ErrorKind::Combined, eps, eps_prime, {}, {}};
    }
    static ErrorChannel general_linear(const Vec3 &f, const Mat3 &f_lin) {
        return {ErrorKind::GeneralLinear, 0.0, 0.0, f, f_lin};
    }

    /// Same channel with every strength multiplied by s.
    ErrorChannel scaled(double s) const {
        ErrorChannel c = *this;
        c.eps *= s;
        c.eps_prime *= s;
        for (auto &x : c.constant) x *= s;
        for (auto &row : c.linear)
            for (auto &x : row) x *= s;
        return c;
    }

    RotationVector delta_m(const RotationVector &m) const {
        if (kind == ErrorKind::GeneralLinear) {
            Vec3 d = constant;
            for (int mu = 0; mu < 3; ++mu)
                for (int nu = 0; nu < 3; ++nu) d[mu] += linear[mu][nu] * m[nu];
            return RotationVector(d);
        }
        const double a = m.angle();
        return {eps * m[0], eps * m[1], eps * m[2] + eps_prime * a};
    }
};

/// dW = dm.tau for one pulse.
inline HermitianGen pulse_error(const RotationVector &m, const ErrorChannel &ch) {
    return HermitianGen::from_components(ch.delta_m(m).v);
}

/// Gauss-Legendre evaluation of int_0^1 e^{ixW} dW e^{-ixW} dx, W = m.tau.
inline HermitianGen interaction_error_quadrature(const RotationVector &m, const HermitianGen &dw, int nodes = 64) {
    if (nodes < 2) throw ArgumentError("interaction_error_quadrature: need at least 2 nodes");
    const QuadratureRule rule = gauss_legendre(nodes);
    HermitianGen acc;
    for (int j = 0; j < nodes; ++j) acc += rule.weights[j] * rotation(rule.nodes[j] * m).pull_back(dw);
    return acc;
}

/// Interaction-picture error dW_I for one pulse.
///
/// For xy-plane pulses under the (eps, eps') channels the closed form
///   dW_I = eps W + eps' sin(theta/2) R(m)^dag sigma_3
/// is used. General-linear errors that commute with W pass through
/// unchanged; everything else is integrated with 64-node Gauss-Legendre.
inline HermitianGen interaction_error(const RotationVector &m, const ErrorChannel &ch) {
    const HermitianGen dw = pulse_error(m, ch);
    if (ch.kind == ErrorKind::GeneralLinear) {
        if (commutator(generator(m), dw).frobenius() <= 1e-12) return dw;
        return interaction_error_quadrature(m, dw, 64);
    }
    if (m[2] != 0.0) return interaction_error_quadrature(m, dw, 64);

    const double theta = m.angle();
    HermitianGen out = ch.eps * generator(m);
    if (ch.eps_prime != 0.0 && theta > 0.0) {
        // R^dag sigma_3 = cos(theta/2) sigma_3 + sin(theta/2) (n_1 sigma_2 - n_2 sigma_1)
        const double s = std::sin(0.5 * theta);
        const double c = std::cos(0.5 * theta);
        const double n1 = m[0] / theta, n2 = m[1] / theta;
        const double k = ch.eps_prime * s;
        // components are w.r.t. tau = sigma/2
        out += HermitianGen::from_components({-2.0 * k * s * n2, 2.0 * k * s * n1, 2.0 * k * c});
    }
    return out;
}

struct ChannelNorm {
    double norm;
    bool robust;
};

inline constexpr double kRobustTolerance = 1e-10;

struct FirstOrderReport {
    HermitianGen delta_w;  // for the channel strengths as given
    double norm = 0.0;
    /// Per unit strength; absent for GeneralLinear channels.
    std::optional<ChannelNorm> pulse_length;
    std::optional<ChannelNorm> off_resonance;
};

namespace detail {

inline HermitianGen accumulate(const PulseSequence &seq, const ErrorChannel &ch) {
    HermitianGen dw;
    Unitary2 v;
    for (const auto &p : seq.pulses) {
        dw += v.pull_back(interaction_error(p.vector(), ch));
        v = rotation(p.vector()) * v;
    }
    return dw;
}

}  // namespace detail

/// DW = sum_i V^{i-1}^dag dW_I^i V^{i-1}.
inline FirstOrderReport accumulate_delta_w(const PulseSequence &seq, const ErrorChannel &ch) {
    if (seq.empty()) throw ArgumentError("accumulate_delta_w: empty sequence");
    FirstOrderReport r;
    r.delta_w = detail::accumulate(seq, ch);
    r.norm = r.delta_w.norm();
    if (ch.kind != ErrorKind::GeneralLinear) {
        const double a = detail::accumulate(seq, ErrorChannel::pulse_length(1.0)).norm();
        const double b = detail::accumulate(seq, ErrorChannel::off_resonance(1.0)).norm();
        r.pulse_length = ChannelNorm{a, a <= kRobustTolerance};
        r.off_resonance = ChannelNorm{b, b <= kRobustTolerance};
    }
    return r;
}

/// DW = sum_i V^{i-1}^dag dW^i V^{i-1}, valid when every dW^i commutes with W^i.
inline HermitianGen delta_w_commuting(const PulseSequence &seq, const ErrorChannel &ch) {
    HermitianGen dw;
    Unitary2 v;
    int index = 1;
    for (const auto &p : seq.pulses) {
        const HermitianGen w = generator(p.vector());
        const HermitianGen d = pulse_error(p.vector(), ch);
        const double scale = std::max(1.0, w.norm() * d.norm());
        if (commutator(w, d).frobenius() > 1e-12 * scale)
            throw ArgumentError("delta_w_commuting: error does not commute with pulse " + std::to_string(index));
        dw += v.pull_back(d);
        v = rotation(p.vector()) * v;
        ++index;
    }
    return dw;
}

/// eps * sum_i V^{i-1}^dag W^i V^{i-1}
inline HermitianGen delta_w_commuting(const PulseSequence &seq, double eps) {
    return delta_w_commuting(seq, ErrorChannel::pulse_length(eps));
}

struct StDecomposition {
    Mat2 s;
    Mat2 t;
};

/// For three xy-plane pulses, U DW = eps R(m^3) S + eps' T with
///   S = W3 R2 R1 + R2 W2 R1 + R2 R1 W1
///   T = sin(th3/2) s3 R2 R1 + sin(th2/2) R3 s3 R1 + sin(th1/2) R3 R2 s3.
inline StDecomposition st_decomposition(const PulseSequence &seq) {
    if (seq.size() != 3) throw ArgumentError("st_decomposition: need exactly 3 pulses, got " + std::to_string(seq.size()));
    for (const auto &p : seq.pulses)
        if (!p.vector().in_xy_plane()) throw ArgumentError("st_decomposition: pulses must lie in the xy-plane");
    const auto &m1 = seq.pulses[0].vector();
    const auto &m2 = seq.pulses[1].vector();
    const auto &m3 = seq.pulses[2].vector();
    const Mat2 r1 = rotation(m1).matrix(), r2 = rotation(m2).matrix(), r3 = rotation(m3).matrix();
    const Mat2 w1 = generator(m1).matrix(), w2 = generator(m2).matrix(), w3 = generator(m3).matrix();
    const Mat2 s3 = pauli(3);
    StDecomposition out;
    out.s = w3 * r2 * r1 + r2 * w2 * r1 + r2 * r1 * w1;
    out.t = std::sin(0.5 * m3.angle()) * (s3 * r2 * r1) + std::sin(0.5 * m2.angle()) * (r3 * s3 * r1) +
            std::sin(0.5 * m1.angle()) * (r3 * r2 * s3);
    return out;
}

/// Moment integrals over the continuous-time drive. Pulse i occupies a time
/// fraction |m^i| / sum_j |m^j| of [0, 1] with constant lambda = m^i / dt_i.
///   first(mu, nu)      = 2 Tr[(int tau~_mu dt) tau_nu]
///   second[rho](mu, nu) = 2 Tr[(int tau~_mu lambda_nu dt) tau_rho]
/// where tau~_mu(t) = U(t)^dag tau_mu U(t). The trace over (mu, nu) of
/// second[rho] is the rho component of int U^dag H U dt.
struct MomentIntegrals {
    Mat3 first{};
    std::array<Mat3, 3> second{};

    Vec3 second_trace() const {
        Vec3 t{};
        for (int rho = 0; rho < 3; ++rho) t[rho] = second[rho][0][0] + second[rho][1][1] + second[rho][2][2];
        return t;
    }
};

/// `subdivisions` is the Gauss-Legendre node count used inside each pulse.
inline MomentIntegrals error_moment_integrals(const PulseSequence &seq, int subdivisions = 256) {
    if (seq.empty()) throw ArgumentError("error_moment_integrals: empty sequence");
    if (subdivisions < 1) throw ArgumentError("error_moment_integrals: subdivisions must be positive");
    MomentIntegrals out;
    double total = 0.0;
    for (const auto &p : seq.pulses) total += p.vector().angle();
    if (total == 0.0) return out;

    const QuadratureRule rule = gauss_legendre(subdivisions);
    const std::array<HermitianGen, 3> tau{pauli_generator(1), pauli_generator(2), pauli_generator(3)};
    Unitary2 v;
    for (const auto &p : seq.pulses) {
        const RotationVector &m = p.vector();
        const double dt = m.angle() / total;
        if (dt > 0.0) {
            const Vec3 lambda{m[0] / dt, m[1] / dt, m[2] / dt};
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const Unitary2 u = rotation(rule.nodes[j] * m) * v;
                const double w = rule.weights[j] * dt;
                for (int mu = 0; mu < 3; ++mu) {
                    const Vec3 c = u.pull_back(tau[mu]).components();
                    for (int nu = 0; nu < 3; ++nu) {
                        out.first[mu][nu] += w * c[nu];
                        for (int rho = 0; rho < 3; ++rho) out.second[rho][mu][nu] += w * lambda[nu] * c[rho];
                    }
                }
            }
        }
        v = rotation(m) * v;
    }
    return out;
}

/// M = (trace/3) I + antisym + sym_traceless.
struct IrreducibleParts {
    double trace = 0.0;
    Mat3 antisym{};
    Mat3 sym_traceless{};
};

inline IrreducibleParts irreducible_decompose(const Mat3 &m) {
    IrreducibleParts out;
    out.trace = m[0][0] + m[1][1] + m[2][2];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out.antisym[i][j] = 0.5 * (m[i][j] - m[j][i]);
            out.sym_traceless[i][j] = 0.5 * (m[i][j] + m[j][i]) - (i == j ? out.trace / 3.0 : 0.0);
        }
    }
    return out;
}

/// Exact perturbed gate R(m^k + dm^k) ... R(m^1 + dm^1).
inline Unitary2 finite_difference_propagator(const PulseSequence &seq, const ErrorChannel &ch) {
    Unitary2 v;
    for (const auto &p : seq.pulses) v = rotation(p.vector() + ch.delta_m(p.vector())) * v;
    return v;
}

/// Central-difference estimate of DW for the channel: Hermitian part of
/// i U^dag (U(+h) - U(-h)) / 2h. Accurate to O(h^2).
inline HermitianGen first_order_oracle(const PulseSequence &seq, const ErrorChannel &ch, double step = 1e-5) {
    if (!(step > 0.0 && step <= 1e-3)) throw ArgumentError("first_order_oracle: step must lie in (0, 1e-3]");
    const Mat2 up = finite_difference_propagator(seq, ch.scaled(step)).matrix();
    const Mat2 dn = finite_difference_propagator(seq, ch.scaled(-step)).matrix();
    const Mat2 d = (1.0 / (2.0 * step)) * (up - dn);
    const Mat2 x = cplx(0.0, 1.0) * (seq.ideal_product().matrix().adjoint() * d);
    return hermitian_part(x);
}

}  // namespace rpulse

#endif

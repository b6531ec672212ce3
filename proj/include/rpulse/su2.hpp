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

#ifndef RPULSE_SU2_HPP
#define RPULSE_SU2_HPP

/* Exact 2x2 algebra for single-qubit gates.
 *
 * Conventions: generators tau_k = sigma_k / 2, rotations
 * R(m) = exp(-i m.tau) = cos(|m|/2) I - i sin(|m|/2) (m/|m|).sigma,
 * and all angles in radians.
 */

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "rpulse/errors.hpp"

namespace rpulse {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double norm(const Vec3 &v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

/// Wraps an angle into [0, 2pi).
inline double wrap_azimuth(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

/// Plain 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<cplx, 4> e{};

    constexpr cplx &operator()(int r, int c) { return e[2 * r + c]; }
    constexpr const cplx &operator()(int r, int c) const { return e[2 * r + c]; }

    static constexpr Mat2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
    static constexpr Mat2 zero() { return {}; }

    Mat2 adjoint() const { return {{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}}; }
    cplx trace() const { return e[0] + e[3]; }
    cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
    double frobenius() const {
        return std::sqrt(std::norm(e[0]) + std::norm(e[1]) + std::norm(e[2]) + std::norm(e[3]));
    }

    Mat2 &operator+=(const Mat2 &o) {
        for (int k = 0; k < 4; ++k) e[k] += o.e[k];
        return *this;
    }
    Mat2 &operator-=(const Mat2 &o) {
        for (int k = 0; k < 4; ++k) e[k] -= o.e[k];
        return *this;
    }
    Mat2 &operator*=(cplx s) {
        for (auto &x : e) x *= s;
        return *this;
    }
};

inline Mat2 operator+(Mat2 a, const Mat2 &b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2 &b) { return a -= b; }
inline Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
inline Mat2 operator*(cplx s, Mat2 a) { return a *= s; }
inline Mat2 operator*(double s, Mat2 a) { return a *= s; }
inline Mat2 operator*(const Mat2 &a, const Mat2 &b) {
    return {{a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
             a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]}};
}

inline double distance(const Mat2 &a, const Mat2 &b) { return (a - b).frobenius(); }

/// Pauli matrix sigma_k, k in {1,2,3}.
inline Mat2 pauli(int k) {
    using namespace std::complex_literals;
    switch (k) {
        case 1: return {{0.0, 1.0, 1.0, 0.0}};
        case 2: return {{0.0, -1i, 1i, 0.0}};
        case 3: return {{1.0, 0.0, 0.0, -1.0}};
        default: throw ArgumentError("Pauli index must be 1, 2 or 3, got " + std::to_string(k));
    }
}

/// sum_k v_k sigma_k
inline Mat2 pauli_dot(const Vec3 &v) {
    using namespace std::complex_literals;
    return {{cplx(v[2]), cplx(v[0], -v[1]), cplx(v[0], v[1]), cplx(-v[2])}};
}

/// Writes X = a I - i b.sigma and returns (a, b) with complex coefficients.
/// For X in SU(2) both a and b are real.
struct Su2Coefficients {
    cplx a;
    std::array<cplx, 3> b;
};

inline Su2Coefficients su2_coefficients(const Mat2 &x) {
    using namespace std::complex_literals;
    // Tr(X sigma_k) = -2i b_k
    const cplx t1 = x(0, 1) + x(1, 0);
    const cplx t2 = 1i * x(0, 1) - 1i * x(1, 0);
    const cplx t3 = x(0, 0) - x(1, 1);
    return {0.5 * x.trace(), {0.5i * t1, 0.5i * t2, 0.5i * t3}};
}

/// Traceless Hermitian 2x2 matrix: an element of su(2) (times i).
class HermitianGen {
   public:
    HermitianGen() = default;

    /// Checks H = H^dag and Tr H = 0 within tol.
    static HermitianGen from_matrix(const Mat2 &m, double tol = 1e-12) {
        if (distance(m, m.adjoint()) > tol) throw ValidationError("matrix is not Hermitian");
        if (std::abs(m.trace()) > tol) throw ValidationError("matrix is not traceless");
        return HermitianGen(m);
    }

    /// c_k tau_k
    static HermitianGen from_components(const Vec3 &c) { return HermitianGen(0.5 * pauli_dot(c)); }
    static HermitianGen zero() { return {}; }

    /// Components c_k = 2 Tr(H tau_k) = Tr(H sigma_k), so that H = c_k tau_k.
    Vec3 components() const {
        return {(m_(0, 1) + m_(1, 0)).real(), (cplx(0, 1) * (m_(0, 1) - m_(1, 0))).real(),
                (m_(0, 0) - m_(1, 1)).real()};
    }

    const Mat2 &matrix() const { return m_; }
    double norm() const { return m_.frobenius(); }

    HermitianGen &operator+=(const HermitianGen &o) {
        m_ += o.m_;
        return *this;
    }
    friend HermitianGen operator+(HermitianGen a, const HermitianGen &b) { return a += b; }
    friend HermitianGen operator-(HermitianGen a, const HermitianGen &b) {
        a.m_ -= b.m_;
        return a;
    }
    friend HermitianGen operator*(double s, HermitianGen a) {
        a.m_ *= s;
        return a;
    }

   private:
    explicit HermitianGen(const Mat2 &m) : m_(m) {}
    Mat2 m_{};

    friend class Unitary2;
    friend HermitianGen hermitian_part(const Mat2 &m);
};

/// (M + M^dag)/2 with the trace removed. Used to read a generator off a
/// numerically computed matrix.
inline HermitianGen hermitian_part(const Mat2 &m) {
    Mat2 h = 0.5 * (m + m.adjoint());
    const cplx tr = 0.5 * h.trace();
    h(0, 0) -= tr;
    h(1, 1) -= tr;
    return HermitianGen(h);
}

/// Rotation vector m (radians). |m| is the rotation angle.
struct RotationVector {
    Vec3 v{};

    RotationVector() = default;
    constexpr RotationVector(double x, double y, double z) : v{x, y, z} {}
    explicit constexpr RotationVector(const Vec3 &a) : v(a) {}

    /// theta (cos phi, sin phi, 0)
    static RotationVector in_plane(double theta, double phi) {
        return {theta * std::cos(phi), theta * std::sin(phi), 0.0};
    }

    double operator[](int k) const { return v[k]; }
    double angle() const { return norm(v); }
    bool in_xy_plane(double tol = 0.0) const { return std::abs(v[2]) <= tol; }

    friend RotationVector operator+(const RotationVector &a, const RotationVector &b) {
        return {a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2]};
    }
    friend RotationVector operator*(double s, const RotationVector &a) { return {s * a.v[0], s * a.v[1], s * a.v[2]}; }
};

/// 2x2 unitary. Constructed either from a validated matrix or by composing
/// other unitaries.
class Unitary2 {
   public:
    Unitary2() : m_(Mat2::identity()) {}

    static Unitary2 from_matrix(const Mat2 &m, double tol = 1e-12) {
        if (distance(m.adjoint() * m, Mat2::identity()) > tol) throw ValidationError("matrix is not unitary");
        return Unitary2(m);
    }
    static Unitary2 identity() { return {}; }

    const Mat2 &matrix() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }
    Unitary2 adjoint() const { return Unitary2(m_.adjoint()); }
    cplx det() const { return m_.det(); }

    friend Unitary2 operator*(const Unitary2 &a, const Unitary2 &b) { return Unitary2(a.m_ * b.m_); }
    Unitary2 &operator*=(const Unitary2 &b) { return *this = *this * b; }
    /// Global phase e^{i alpha} U.
    friend Unitary2 operator*(cplx phase, const Unitary2 &u) { return Unitary2(phase * u.m_); }

    /// U^dag H U
    HermitianGen pull_back(const HermitianGen &h) const { return HermitianGen(m_.adjoint() * h.m_ * m_); }

   private:
    explicit Unitary2(const Mat2 &m) : m_(m) {}
    Mat2 m_;

    friend Unitary2 rotation(const RotationVector &m);
};

/// tau_k = sigma_k / 2.
inline HermitianGen pauli_generator(int index) { return HermitianGen::from_matrix(0.5 * pauli(index)); }

/// W = m_k tau_k
inline HermitianGen generator(const RotationVector &m) { return HermitianGen::from_components(m.v); }

/// R(m) = exp(-i m.tau). Below |m| = 1e-12 the sin(|m|/2)/|m| factor is
/// replaced by its limit 1/2.
inline Unitary2 rotation(const RotationVector &m) {
    const double theta = m.angle();
    const double c = std::cos(0.5 * theta);
    const double s_over = theta < 1e-12 ? 0.5 : std::sin(0.5 * theta) / theta;
    const Mat2 ms = pauli_dot(m.v);
    Mat2 r = c * Mat2::identity() + cplx(0.0, -s_over) * ms;
    return Unitary2(r);
}

/// Principal logarithm: returns m with rotation(m) = U and |m| in [0, 2pi).
/// -I is reported as (0, 0, 2pi).
inline RotationVector log_rotation(const Unitary2 &u) {
    constexpr double tol = 1e-10;
    const Mat2 &x = u.matrix();
    if (distance(x.adjoint() * x, Mat2::identity()) > tol) throw ValidationError("log_rotation: input is not unitary");
    if (std::abs(x.det() - 1.0) > tol) throw ValidationError("log_rotation: input does not have unit determinant");
    const auto [a, b] = su2_coefficients(x);
    const Vec3 br{b[0].real(), b[1].real(), b[2].real()};
    const double s = norm(br);
    if (s < 1e-15) {
        if (a.real() < 0) return {0.0, 0.0, kTwoPi};
        return {};
    }
    const double theta = 2.0 * std::atan2(s, a.real());
    return RotationVector(theta / s * br[0], theta / s * br[1], theta / s * br[2]);
}

/// F = |Tr(U^dag V)| / 2.
inline double fidelity(const Unitary2 &u, const Unitary2 &v) {
    const Mat2 x = u.matrix().adjoint() * v.matrix();
    return std::min(1.0, 0.5 * std::abs(x.trace()));
}

/// 1 - F computed without cancellation: for unitary X = U^dag V,
/// 1 - F = |b|^2 / (1 + F) where X = e^{i chi}(a I - i b.sigma).
inline double infidelity(const Unitary2 &u, const Unitary2 &v) {
    const Mat2 x = u.matrix().adjoint() * v.matrix();
    const auto [a, b] = su2_coefficients(x);
    const double f = std::min(1.0, std::abs(a));
    return (std::norm(b[0]) + std::norm(b[1]) + std::norm(b[2])) / (1.0 + f);
}

struct EigenPair {
    double phase;               // gamma in (-pi, pi]
    std::array<cplx, 2> vector;  // unit norm
};

/// Spectral decomposition U v_a = e^{i gamma_a} v_a. For U = e^{i chi}(cos a I - i sin a n.sigma)
/// the first pair is the +1 eigenvector of n.sigma (phase chi - a), the second
/// the -1 eigenvector (phase chi + a). A multiple of the identity returns the
/// computational basis.
inline std::array<EigenPair, 2> eig_unitary(const Unitary2 &u) {
    const Mat2 &x = u.matrix();
    const double chi = 0.5 * std::arg(x.det());
    const Mat2 y = std::polar(1.0, -chi) * x;
    const auto [a, b] = su2_coefficients(y);
    const Vec3 br{b[0].real(), b[1].real(), b[2].real()};
    const double s = norm(br);
    if (s < 1e-14) {
        const double g = std::arg(x(0, 0));
        return {{{wrap_phase(g), {1.0, 0.0}}, {wrap_phase(std::arg(x(1, 1))), {0.0, 1.0}}}};
    }
    const double half = std::atan2(s, a.real());
    const Vec3 n{br[0] / s, br[1] / s, br[2] / s};

    std::array<cplx, 2> plus, minus;
    if (n[2] >= 0) {
        plus = {1.0 + n[2], cplx(n[0], n[1])};
        minus = {cplx(-n[0], n[1]), 1.0 + n[2]};
    } else {
        plus = {cplx(n[0], -n[1]), 1.0 - n[2]};
        minus = {1.0 - n[2], cplx(-n[0], -n[1])};
    }
    auto normalize = [](std::array<cplx, 2> &v) {
        const double l = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        v[0] /= l;
        v[1] /= l;
    };
    normalize(plus);
    normalize(minus);
    return {{{wrap_phase(chi - half), plus}, {wrap_phase(chi + half), minus}}};
}

/// <v| H |v>
inline double expectation(const HermitianGen &h, const std::array<cplx, 2> &v) {
    const Mat2 &m = h.matrix();
    const cplx hv0 = m(0, 0) * v[0] + m(0, 1) * v[1];
    const cplx hv1 = m(1, 0) * v[0] + m(1, 1) * v[1];
    return (std::conj(v[0]) * hv0 + std::conj(v[1]) * hv1).real();
}

inline std::array<cplx, 2> act(const Unitary2 &u, const std::array<cplx, 2> &v) {
    return {u(0, 0) * v[0] + u(0, 1) * v[1], u(1, 0) * v[0] + u(1, 1) * v[1]};
}

/// H W - W H
inline Mat2 commutator(const HermitianGen &h, const HermitianGen &w) {
    return h.matrix() * w.matrix() - w.matrix() * h.matrix();
}

}  // namespace rpulse

#endif

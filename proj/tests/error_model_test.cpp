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

#include "rpulse/error_model.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rpulse/sequences.hpp"

using namespace rpulse;

namespace {

PulseSequence random_xy_sequence(int k) {
    PulseSequence seq;
    for (int i = 0; i < k; ++i) seq.pulses.push_back(Pulse::xy(oracle::uniform(0, 3 * kPi), oracle::uniform(0, kTwoPi)));
    return seq;
}

Mat3 random_mat3() {
    Mat3 m;
    for (auto &r : m)
        for (auto &x : r) x = oracle::uniform(-1, 1);
    return m;
}

double hermiticity_defect(const HermitianGen &h) { return distance(h.matrix(), h.matrix().adjoint()); }

}  // namespace

TEST(ErrorModel, pulse_error_examples) {
    const RotationVector m(kPi, 0, 0);
    EXPECT_LT(distance(pulse_error(m, ErrorChannel::pulse_length(0.1)).matrix(), (0.1 * kPi / 2) * pauli(1)), 1e-15);
    EXPECT_LT(distance(pulse_error(m, ErrorChannel::off_resonance(0.1)).matrix(), (0.1 * kPi / 2) * pauli(3)), 1e-15);
    EXPECT_EQ(pulse_error(m, ErrorChannel::combined(0, 0)).norm(), 0.0);
}

TEST(ErrorModel, pulse_error_general_linear) {
    const Vec3 f{0.1, -0.2, 0.3};
    Mat3 lin{};
    lin[0][1] = 2.0;  // dm_1 += 2 m_2
    const RotationVector m(0.5, 1.5, 0.0);
    const Vec3 c = pulse_error(m, ErrorChannel::general_linear(f, lin)).components();
    EXPECT_NEAR(c[0], 0.1 + 3.0, 1e-15);
    EXPECT_NEAR(c[1], -0.2, 1e-15);
    EXPECT_NEAR(c[2], 0.3, 1e-15);
}

TEST(ErrorModel, interaction_error_examples) {
    // sin(theta/2) = 0 at theta = 2pi
    const RotationVector full(kTwoPi, 0, 0);
    const auto z = interaction_error(full, ErrorChannel::off_resonance(0.37));
    EXPECT_LT(z.norm(), 1e-15);
    EXPECT_LT(interaction_error_quadrature(full, pulse_error(full, ErrorChannel::off_resonance(0.37)), 64).norm(), 1e-14);

    const RotationVector half(kPi, 0, 0);
    EXPECT_LT(distance(interaction_error(half, ErrorChannel::pulse_length(0.1)).matrix(), (0.1 * kPi / 2) * pauli(1)),
              1e-15);

    // sin(pi/4)(cos(pi/4) sigma_3 + sin(pi/4) sigma_2) = (sigma_2 + sigma_3) / 2
    const RotationVector quarter(kPi / 2, 0, 0);
    const Mat2 expected = 0.5 * (pauli(2) + pauli(3));
    EXPECT_LT(distance(interaction_error(quarter, ErrorChannel::off_resonance(1.0)).matrix(), expected), 1e-15);
    EXPECT_LT(distance(oracle::interaction_integral(quarter.v, (kPi / 4) * pauli(3)), expected), 1e-12);
}

TEST(ErrorModel, quadrature_examples) {
    const RotationVector m(0.4, -1.1, 0.8);
    EXPECT_EQ(interaction_error_quadrature(m, HermitianGen::zero(), 8).norm(), 0.0);

    const RotationVector quarter(kPi / 2, 0, 0);
    const auto dw = HermitianGen::from_matrix((kPi / 4) * pauli(3));
    EXPECT_LT(distance(interaction_error_quadrature(quarter, dw, 64).matrix(),
                       interaction_error(quarter, ErrorChannel::off_resonance(1.0)).matrix()),
              1e-12);

    // W = (pi/2) sigma_3 rotates sigma_1 towards -sigma_2:
    // int_0^1 (cos(pi x) sigma_1 - sin(pi x) sigma_2) dx / 2 = -(2/pi) sigma_2 / 2
    const RotationVector zrot(0, 0, kPi);
    const auto q = interaction_error_quadrature(zrot, pauli_generator(1), 64);
    EXPECT_LT(distance(q.matrix(), (-1.0 / kPi) * pauli(2)), 1e-13);
    EXPECT_LT(distance(q.matrix(), oracle::interaction_integral(zrot.v, 0.5 * pauli(1))), 1e-12);

    EXPECT_THROW(interaction_error_quadrature(zrot, pauli_generator(1), 1), ArgumentError);
}

TEST(ErrorModel, closed_form_matches_quadrature) {
    for (int k = 0; k < 200; ++k) {
        const RotationVector m = RotationVector::in_plane(oracle::uniform(0, 4 * kPi), oracle::uniform(0, kTwoPi));
        const auto ch = ErrorChannel::combined(oracle::uniform(-0.1, 0.1), oracle::uniform(-0.1, 0.1));
        const auto closed = interaction_error(m, ch);
        const auto quad = interaction_error_quadrature(m, pulse_error(m, ch), 64);
        EXPECT_LT(distance(closed.matrix(), quad.matrix()), 1e-10);
        EXPECT_LT(hermiticity_defect(closed), 1e-12);
    }
    // independent Simpson oracle on a handful of cases
    for (int k = 0; k < 10; ++k) {
        const RotationVector m = RotationVector::in_plane(oracle::uniform(0, 3 * kPi), oracle::uniform(0, kTwoPi));
        const auto ch = ErrorChannel::combined(oracle::uniform(-0.1, 0.1), oracle::uniform(-0.1, 0.1));
        EXPECT_LT(distance(interaction_error(m, ch).matrix(),
                           oracle::interaction_integral(m.v, pulse_error(m, ch).matrix())),
                  1e-11);
    }
}

TEST(ErrorModel, out_of_plane_pulses_use_quadrature) {
    const RotationVector m(0.3, 0.2, 1.7);
    const auto ch = ErrorChannel::combined(0.05, -0.07);
    EXPECT_LT(distance(interaction_error(m, ch).matrix(), oracle::interaction_integral(m.v, pulse_error(m, ch).matrix())),
              1e-11);
}

TEST(ErrorModel, general_linear_paths) {
    const RotationVector m(0.8, -0.4, 0.0);
    // F proportional to identity commutes with W: dW_I = dW
    Mat3 iso{};
    for (int i = 0; i < 3; ++i) iso[i][i] = 0.2;
    const auto ch_iso = ErrorChannel::general_linear({}, iso);
    EXPECT_LT(distance(interaction_error(m, ch_iso).matrix(), pulse_error(m, ch_iso).matrix()), 1e-15);

    const auto ch = ErrorChannel::general_linear({0.01, 0.02, -0.03}, random_mat3());
    EXPECT_LT(distance(interaction_error(m, ch).matrix(), oracle::interaction_integral(m.v, pulse_error(m, ch).matrix())),
              1e-11);
}

TEST(ErrorModel, accumulate_examples) {
    const auto p = plain(kPi, 0);
    const auto r = accumulate_delta_w(p, ErrorChannel::pulse_length(0.01));
    EXPECT_LT(distance(r.delta_w.matrix(), (0.01 * kPi / 2) * pauli(1)), 1e-15);
    ASSERT_TRUE(r.pulse_length && r.off_resonance);
    EXPECT_FALSE(r.pulse_length->robust);
    EXPECT_FALSE(r.off_resonance->robust);

    // short CORPSE: eps-residual is the target's own pulse-length error
    const double phi = 0.6;
    const auto c = corpse(kPi, phi, {1, 1, 0});
    const auto rc = accumulate_delta_w(c, ErrorChannel::pulse_length(0.02));
    const Mat2 expected = 0.02 * generator(RotationVector::in_plane(kPi, phi)).matrix();
    EXPECT_LT(distance(rc.delta_w.matrix(), expected), 1e-12);
    EXPECT_LT(accumulate_delta_w(c, ErrorChannel::off_resonance(0.02)).norm, 1e-12);
    EXPECT_TRUE(rc.off_resonance->robust);

    EXPECT_THROW(accumulate_delta_w(PulseSequence{}, ErrorChannel::pulse_length(1)), ArgumentError);
}

TEST(ErrorModel, accumulate_general_linear_has_no_channel_split) {
    const auto r = accumulate_delta_w(plain(1.0, 0.2), ErrorChannel::general_linear({0.1, 0, 0}, {}));
    EXPECT_FALSE(r.pulse_length.has_value());
    EXPECT_FALSE(r.off_resonance.has_value());
    EXPECT_GT(r.norm, 0.0);
}

TEST(ErrorModel, hermiticity_and_linearity) {
    for (int k = 0; k < 50; ++k) {
        const auto seq = random_xy_sequence(1 + k % 7);
        const double e = oracle::uniform(-0.1, 0.1), ep = oracle::uniform(-0.1, 0.1), alpha = oracle::uniform(-3, 3);
        const auto a = accumulate_delta_w(seq, ErrorChannel::combined(e, ep)).delta_w;
        const auto b = accumulate_delta_w(seq, ErrorChannel::combined(alpha * e, alpha * ep)).delta_w;
        EXPECT_LT(hermiticity_defect(a), 1e-12);
        EXPECT_LT(distance(b.matrix(), alpha * a.matrix()), 1e-12);
    }
}

TEST(ErrorModel, delta_w_commuting_examples) {
    EXPECT_LT(distance(delta_w_commuting(plain(kPi, 0), 0.1).matrix(), (0.1 * kPi / 2) * pauli(1)), 1e-15);
    EXPECT_LT(delta_w_commuting(scrofulous(kPi, 0), 1.0).norm(), 1e-10);
    EXPECT_THROW(delta_w_commuting(plain(kPi, 0), ErrorChannel::off_resonance(0.1)), ArgumentError);
}

TEST(ErrorModel, commuting_formula_agrees_with_general_path) {
    for (int k = 0; k < 100; ++k) {
        const auto seq = random_xy_sequence(1 + k % 9);
        const double e = oracle::uniform(-1, 1);
        EXPECT_LT(distance(delta_w_commuting(seq, e).matrix(),
                           accumulate_delta_w(seq, ErrorChannel::pulse_length(e)).delta_w.matrix()),
                  1e-12);
    }
}

TEST(ErrorModel, st_decomposition_examples) {
    const auto c = st_decomposition(corpse(kPi, 0));
    EXPECT_LT(c.t.frobenius(), 1e-10);

    const auto s = st_decomposition(scrofulous(kPi, 0));
    EXPECT_LT(s.s.frobenius(), 1e-10);
    // T differs from sigma_3 sin(pi/2)
    EXPECT_GT(distance(s.t, pauli(3)), 0.1);

    EXPECT_THROW(st_decomposition(plain(1, 0)), ArgumentError);
    PulseSequence z;
    z.pulses = {Pulse::xy(1, 0), Pulse::z(1), Pulse::xy(1, 0)};
    EXPECT_THROW(st_decomposition(z), ArgumentError);
}

TEST(ErrorModel, st_identity) {
    for (int k = 0; k < 100; ++k) {
        const auto seq = random_xy_sequence(3);
        const double e = oracle::uniform(-0.1, 0.1), ep = oracle::uniform(-0.1, 0.1);
        const auto st = st_decomposition(seq);
        const Mat2 lhs = seq.ideal_product().matrix() * accumulate_delta_w(seq, ErrorChannel::combined(e, ep)).delta_w.matrix();
        const Mat2 rhs = e * (rotation(seq.pulses[2].vector()).matrix() * st.s) + ep * st.t;
        EXPECT_LT(distance(lhs, rhs), 1e-12);
    }
}

TEST(ErrorModel, moment_integrals_examples) {
    const auto sc = error_moment_integrals(scrofulous(kPi, 0), 256);
    for (int rho = 0; rho < 3; ++rho) EXPECT_NEAR(irreducible_decompose(sc.second[rho]).trace, 0.0, 1e-8);

    // constant H: int U^dag H U dt = H = (pi/2) sigma_1
    const auto p = error_moment_integrals(plain(kPi, 0), 256);
    const Vec3 t = p.second_trace();
    EXPECT_NEAR(t[0], kPi, 1e-12);
    EXPECT_NEAR(t[1], 0.0, 1e-12);
    EXPECT_NEAR(t[2], 0.0, 1e-12);

    PulseSequence zero;
    zero.pulses = {Pulse::xy(0.0, 0.3)};
    const auto z = error_moment_integrals(zero, 16);
    for (int rho = 0; rho < 3; ++rho)
        for (const auto &row : z.second[rho])
            for (double x : row) EXPECT_EQ(x, 0.0);
}

TEST(ErrorModel, first_moment_matches_simpson) {
    // plain pulse about x: tau~_mu(t) = R(t m)^dag tau_mu R(t m) over t in [0,1]
    const Vec3 m{1.3, 0.0, 0.0};
    PulseSequence seq;
    seq.pulses = {Pulse::xy(1.3, 0.0)};
    const auto mi = error_moment_integrals(seq, 64);
    for (int mu = 1; mu <= 3; ++mu) {
        const Mat2 integral = oracle::interaction_integral(m, 0.5 * pauli(mu));
        for (int nu = 1; nu <= 3; ++nu) {
            const double expected = (integral * pauli(nu)).trace().real();
            EXPECT_NEAR(mi.first[mu - 1][nu - 1], expected, 1e-11) << mu << nu;
        }
    }
}

TEST(ErrorModel, second_moment_trace_is_commuting_delta_w) {
    for (int k = 0; k < 20; ++k) {
        const auto seq = random_xy_sequence(2 + k % 5);
        const Vec3 t = error_moment_integrals(seq, 256).second_trace();
        const Vec3 d = delta_w_commuting(seq, 1.0).components();
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(t[i], d[i], 1e-10);
    }
}

TEST(ErrorModel, irreducible_decompose) {
    Mat3 id{};
    for (int i = 0; i < 3; ++i) id[i][i] = 1.0;
    const auto a = irreducible_decompose(id);
    EXPECT_EQ(a.trace, 3.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(a.antisym[i][j], 0.0);
            EXPECT_EQ(a.sym_traceless[i][j], 0.0);
        }

    Mat3 anti{};
    anti[0][1] = 0.7;
    anti[1][0] = -0.7;
    anti[1][2] = -0.2;
    anti[2][1] = 0.2;
    const auto b = irreducible_decompose(anti);
    EXPECT_EQ(b.trace, 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(b.antisym[i][j], anti[i][j]);
            EXPECT_EQ(b.sym_traceless[i][j], 0.0);
        }

    for (int k = 0; k < 100; ++k) {
        const Mat3 m = random_mat3();
        const auto p = irreducible_decompose(m);
        double tr = 0;
        for (int i = 0; i < 3; ++i) {
            tr += p.sym_traceless[i][i];
            for (int j = 0; j < 3; ++j) {
                const double back = (i == j ? p.trace / 3 : 0.0) + p.antisym[i][j] + p.sym_traceless[i][j];
                EXPECT_NEAR(back, m[i][j], 1e-14);
                EXPECT_NEAR(p.antisym[i][j], -p.antisym[j][i], 1e-14);
                EXPECT_NEAR(p.sym_traceless[i][j], p.sym_traceless[j][i], 1e-14);
            }
        }
        EXPECT_NEAR(tr, 0.0, 1e-14);
    }
}

TEST(ErrorModel, finite_difference_propagator_examples) {
    const auto c = cis_cccp(kPi, kPi / 2);
    EXPECT_LT(distance(finite_difference_propagator(c, ErrorChannel::combined(0, 0)).matrix(), c.ideal_product().matrix()),
              1e-15);
    const auto p = plain(kPi, 0);
    const double e = 0.03;
    EXPECT_LT(distance(finite_difference_propagator(p, ErrorChannel::pulse_length(e)).matrix(),
                       rotation({kPi * (1 + e), 0, 0}).matrix()),
              1e-15);
    EXPECT_LT(distance(finite_difference_propagator(p, ErrorChannel::off_resonance(e)).matrix(),
                       rotation({kPi, 0, e * kPi}).matrix()),
              1e-15);
}

TEST(ErrorModel, first_order_oracle_examples) {
    EXPECT_LT(first_order_oracle(corpse(kPi, 0), ErrorChannel::off_resonance(1.0), 1e-5).norm(), 1e-4);
    EXPECT_LT(distance(first_order_oracle(plain(kPi, 0), ErrorChannel::pulse_length(1.0), 1e-5).matrix(),
                       (kPi / 2) * pauli(1)),
              1e-4);
    EXPECT_LT(first_order_oracle(cis_cccp(kPi, 0), ErrorChannel::combined(1.0, 1.0), 1e-5).norm(), 1e-4);
    EXPECT_THROW(first_order_oracle(plain(1, 0), ErrorChannel::pulse_length(1), 0.0), ArgumentError);
    EXPECT_THROW(first_order_oracle(plain(1, 0), ErrorChannel::pulse_length(1), 2e-3), ArgumentError);
}

TEST(ErrorModel, analytic_matches_finite_differences) {
    const ErrorChannel channels[] = {ErrorChannel::pulse_length(1), ErrorChannel::off_resonance(1),
                                     ErrorChannel::combined(1, 1)};
    for (int k = 0; k < 30; ++k) {
        const auto seq = random_xy_sequence(1 + k % 6);
        for (const auto &ch : channels) {
            EXPECT_LT(distance(accumulate_delta_w(seq, ch).delta_w.matrix(), first_order_oracle(seq, ch, 1e-5).matrix()),
                      1e-4);
        }
        const auto gl = ErrorChannel::general_linear({oracle::uniform(-1, 1), oracle::uniform(-1, 1), 0.3}, random_mat3());
        EXPECT_LT(distance(accumulate_delta_w(seq, gl).delta_w.matrix(), first_order_oracle(seq, gl, 1e-5).matrix()), 1e-4);
    }
}

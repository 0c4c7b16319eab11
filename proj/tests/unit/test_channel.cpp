// SPDX-License-Identifier: Apache-2.0
//
// risloc - error bounds and RIS phase optimization for multi-RIS mmWave positioning
// Copyright (C) 2026 The risloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risloc/channel.hpp"
#include "risloc/errors.hpp"
#include "risloc/optimizer.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace risloc;

namespace
{

constexpr double kLambda = 0.06;
constexpr double kHalf = kLambda / 2.0;

double phase_of(const cdouble &z) { return std::arg(z); }

} // namespace

TEST(Steering, UlaBroadsideIsAllOnes)
{
    const Eigen::VectorXcd v = steer_ula(0.0, 6, kHalf, kLambda);
    EXPECT_TRUE(v.isApprox(Eigen::VectorXcd::Ones(6), 1e-15));
}

TEST(Steering, UlaEndfireAlternates)
{
    const Eigen::VectorXcd v = steer_ula(kPi / 2.0, 4, kHalf, kLambda);
    const double expected[] = {1.0, -1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(std::abs(v(i) - expected[i]), 0.0, 1e-12);
}

TEST(Steering, UlaThirtyDegreesStepsByQuarterTurn)
{
    const Eigen::VectorXcd v = steer_ula(std::asin(0.5), 3, kHalf, kLambda);
    EXPECT_NEAR(phase_of(v(0)), 0.0, 1e-12);
    EXPECT_NEAR(phase_of(v(1)), kPi / 2.0, 1e-12);
    EXPECT_NEAR(std::abs(phase_of(v(2))), kPi, 1e-12);
}

TEST(Steering, UpaSpecialDirections)
{
    EXPECT_TRUE(steer_upa(0.0, kPi / 2.0, 3, kHalf, kLambda).isApprox(Eigen::VectorXcd::Ones(9), 1e-15));

    // elevation 0: only the b index matters
    const int L = 3;
    const Eigen::VectorXcd v = steer_upa(0.7, 0.0, L, kHalf, kLambda);
    for (int b = 0; b < L; ++b)
        for (int a = 0; a < L; ++a)
            EXPECT_NEAR(std::abs(v(a + b * L) - std::polar(1.0, kPi * b)), 0.0, 1e-12);

    // a + b*L ordering: (a=0,b=0), (1,0), (0,1), (1,1)
    const Eigen::VectorXcd w = steer_upa(kPi / 2.0, kPi / 2.0, 2, kHalf, kLambda);
    const double expected[] = {1.0, -1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(std::abs(w(i) - expected[i]), 0.0, 1e-12);
}

TEST(Steering, UnitModulusAndUnitFirstEntry)
{
    for (double angle : {-1.2, -0.3, 0.4, 1.5})
    {
        const Eigen::VectorXcd u = steer_ula(angle, 7, kHalf, kLambda);
        const Eigen::VectorXcd p = steer_upa(angle, 0.3 - angle, 5, kHalf, kLambda);
        EXPECT_EQ(u(0), cdouble(1.0, 0.0));
        EXPECT_EQ(p(0), cdouble(1.0, 0.0));
        EXPECT_TRUE(u.cwiseAbs().isApproxToConstant(1.0, 1e-14));
        EXPECT_TRUE(p.cwiseAbs().isApproxToConstant(1.0, 1e-14));
    }
}

TEST(PathLoss, LosReferenceTerms)
{
    const double d0 = std::sqrt(10600.0);
    const PathLoss pl = path_loss_los(d0, 3.7, 4.9e9);
    const double constant = 10.0 * std::log10(64.0 * kPi * kPi * kPi);
    EXPECT_NEAR(constant, 32.977, 1e-3);
    EXPECT_NEAR(37.0 * std::log10(d0), 74.468, 1e-3);
    EXPECT_NEAR(20.0 * std::log10(4.9), 13.804, 1e-3);
    EXPECT_NEAR(pl.db, 121.25, 5e-3);
    EXPECT_NEAR(pl.linear, std::pow(10.0, pl.db / 10.0), 1e-9 * pl.linear);
}

TEST(PathLoss, UnitDistancesLeaveOnlyConstantAndFrequency)
{
    const PathLoss pl = path_loss_ris(1.0, 1.0, 2.2, 4.9e9);
    EXPECT_NEAR(pl.db, 10.0 * std::log10(64.0 * kPi * kPi * kPi) + 40.0 * std::log10(4.9), 1e-12);
}

TEST(PathLoss, DoublingDistanceAddsExponentTimesThreeDb)
{
    const double a = path_loss_los(50.0, 3.7, 4.9e9).db;
    const double b = path_loss_los(100.0, 3.7, 4.9e9).db;
    EXPECT_NEAR(b - a, 10.0 * 3.7 * std::log10(2.0), 1e-12);
}

TEST(PathLoss, StrictlyIncreasingInEachDistance)
{
    double prev = -1e300;
    for (double d = 1.0; d < 500.0; d *= 1.3)
    {
        const double v = path_loss_ris(d, 20.0, 2.2, 4.9e9).db;
        EXPECT_GT(v, prev);
        EXPECT_GT(path_loss_ris(20.0, d * 1.01, 2.2, 4.9e9).db, path_loss_ris(20.0, d, 2.2, 4.9e9).db);
        prev = v;
    }
}

TEST(PathLoss, ShadowingModes)
{
    Scenario s = test::small_reference_scenario();
    EXPECT_EQ(shadow_fading_db(s, 0), 0.0);
    EXPECT_EQ(shadow_fading_db(s, 2), 0.0);

    s.pathloss.shadowing = Shadowing::Sampled;
    s.pathloss.shadowing_seed = 17;
    const double xi0 = shadow_fading_db(s, 0);
    const double xi1 = shadow_fading_db(s, 1);
    EXPECT_NE(xi0, 0.0);
    EXPECT_NE(xi0 / 4.0, xi1 / 7.0); // different links draw independently
    EXPECT_EQ(xi0, shadow_fading_db(s, 0));
    // Dropping panels keeps the draws of the remaining links.
    EXPECT_EQ(xi1, shadow_fading_db(s.with_active_ris(1), 1));

    const GeometryOut g = compute_geometry(s);
    EXPECT_NEAR(path_loss(s, g, 0).db - path_loss_los(g.d0, 3.7, 4.9e9).db, xi0, 1e-12);
}

TEST(PathLoss, SampledShadowingHasConfiguredSpread)
{
    Scenario s = test::small_reference_scenario();
    s.pathloss.shadowing = Shadowing::Sampled;
    double sum = 0.0, sum2 = 0.0;
    const int n = 4000;
    for (int seed = 0; seed < n; ++seed)
    {
        s.pathloss.shadowing_seed = static_cast<std::uint64_t>(seed);
        const double x = shadow_fading_db(s, 0);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sum2 / n - mean * mean);
    EXPECT_NEAR(mean, 0.0, 0.25);
    EXPECT_NEAR(sd, 4.0, 0.2);
}

TEST(Precoder, DefaultBeamsAndPilot)
{
    const Scenario s = test::small_reference_scenario();
    const GeometryOut g = compute_geometry(s);
    const Precoder pc = default_precoder(s, g);
    ASSERT_EQ(pc.F.cols(), 4);
    for (int i = 0; i < pc.F.cols(); ++i)
        EXPECT_NEAR(pc.F.col(i).norm(), 1.0, 1e-12);
    EXPECT_NEAR(pc.x.squaredNorm(), 1.0, 1e-12);
    const double scale = 1.0 / std::sqrt(8.0);
    EXPECT_TRUE(pc.F.col(0).isApprox(steer_ula(g.theta_tx0, 8, s.radio.spacing(), s.radio.wavelength()) * scale));
    EXPECT_TRUE(pc.F.col(2).isApprox(steer_ula(g.theta_tx_ris(1), 8, s.radio.spacing(), s.radio.wavelength()) * scale));

    const Scenario los = s.with_active_ris(0);
    const Precoder single = default_precoder(los, compute_geometry(los));
    EXPECT_EQ(single.F.cols(), 1);
    EXPECT_NEAR(single.F.col(0).norm(), 1.0, 1e-12);
}

TEST(Precoder, RejectsPinnedBeamCount)
{
    Scenario s = test::small_reference_scenario();
    s.radio.beams = 2;
    EXPECT_THROW(default_precoder(s, compute_geometry(s)), ConfigError);
    s.radio.beams = 4;
    EXPECT_NO_THROW(default_precoder(s, compute_geometry(s)));
}

TEST(Channel, RisTermMatchesExplicitMatrixProduct)
{
    const Scenario s = test::small_reference_scenario();
    const GeometryOut g = compute_geometry(s);
    const ChannelRealization r = make_realization(s, g);
    const PhaseProfile phases = test::seeded_phases(s, 4);
    const double lambda = s.radio.wavelength(), d = s.radio.spacing();

    for (int k = 0; k < s.ris_count(); ++k)
    {
        const int L = s.ris[k].side;
        const Eigen::MatrixXcd H_bi = steer_upa(g.phi_in_az(k), g.phi_in_el(k), L, d, lambda) *
                                      steer_ula(g.theta_tx_ris(k), 8, d, lambda).adjoint();
        const Eigen::MatrixXcd H_im = steer_ula(g.theta_rx(k + 1), 4, d, lambda) *
                                      steer_upa(g.phi_out_az(k), g.phi_out_el(k), L, d, lambda).adjoint();
        const Eigen::MatrixXcd Theta = phases.reflection(k).asDiagonal();
        for (int n : {1, 7, 16})
        {
            const cdouble rot = subcarrier_rotation(s.radio.bandwidth_hz, n, 16, g.tau(k + 1));
            const Eigen::MatrixXcd expected = r.gamma(k + 1) * r.h(k + 1) * rot * (H_im * Theta * H_bi);
            const Eigen::MatrixXcd got = path_channel(s, g, phases, r, k + 1, n);
            EXPECT_LT((got - expected).norm(), 1e-12 * expected.norm());

            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(got);
            EXPECT_LT(svd.singularValues()(1), 1e-12 * svd.singularValues()(0));
        }
    }
}

TEST(Channel, PathNormIndependentOfSubcarrier)
{
    const Scenario s = test::small_reference_scenario();
    const GeometryOut g = compute_geometry(s);
    const ChannelRealization r = make_realization(s, g);
    const PhaseProfile phases = test::seeded_phases(s, 1);
    for (int path = 0; path <= 3; ++path)
    {
        const double ref = path_channel(s, g, phases, r, path, 1).norm();
        for (int n = 2; n <= 16; ++n)
            EXPECT_NEAR(path_channel(s, g, phases, r, path, n).norm(), ref, 1e-12 * ref);
    }
}

TEST(Channel, ReflectionHasModulusDelta)
{
    Scenario s = test::small_reference_scenario();
    PhaseProfile p = test::seeded_phases(s, 2);
    p.delta = 0.7;
    EXPECT_TRUE(p.reflection(0).cwiseAbs().isApproxToConstant(0.7, 1e-14));
}

TEST(MeanSignal, ZeroGainsGiveZero)
{
    Scenario s = test::small_reference_scenario();
    s.gains.assign(4, cdouble(0.0, 0.0));
    const GeometryOut g = compute_geometry(s);
    const Eigen::VectorXcd mu = mean_signal(s, g, test::seeded_phases(s, 3), make_realization(s, g), 5);
    EXPECT_TRUE(mu.isZero(0.0));
}

TEST(MeanSignal, LosOnlyIsScaledReceiveSteeringVector)
{
    const Scenario s = test::small_reference_scenario().with_active_ris(0);
    const GeometryOut g = compute_geometry(s);
    const ChannelRealization r = make_realization(s, g);
    const Precoder pc = default_precoder(s, g);
    const PhaseProfile none = PhaseProfile::zeros(s);
    const Eigen::VectorXcd a_rx = steer_ula(g.theta_rx(0), 4, s.radio.spacing(), s.radio.wavelength());
    const Eigen::VectorXcd a_tx = steer_ula(g.theta_tx0, 8, s.radio.spacing(), s.radio.wavelength());

    const Eigen::VectorXcd first = mean_signal(s, g, none, r, pc, 1);
    for (int n = 1; n <= 16; ++n)
    {
        const Eigen::VectorXcd mu = mean_signal(s, g, none, r, pc, n);
        const cdouble expected_scale = r.gamma(0) * subcarrier_rotation(s.radio.bandwidth_hz, n, 16, g.tau(0)) *
                                       a_tx.dot(pc.F * pc.x);
        EXPECT_LT((mu - expected_scale * a_rx).norm(), 1e-12 * mu.norm());
        EXPECT_TRUE(mu.cwiseAbs().isApprox(first.cwiseAbs(), 1e-12));
    }
}

TEST(Cascade, BeamAlignedReachesFullArrayGain)
{
    Scenario s = test::small_reference_scenario();
    for (int side : {4, 7, 16})
    {
        s = s.with_ris_side(side);
        const GeometryOut g = compute_geometry(s);
        const PhaseProfile p = beam_aligned_phases(s, g);
        for (int k = 0; k < s.ris_count(); ++k)
        {
            const Eigen::VectorXcd in = steer_upa(g.phi_in_az(k), g.phi_in_el(k), side, s.radio.spacing(), s.radio.wavelength());
            const Eigen::VectorXcd out = steer_upa(g.phi_out_az(k), g.phi_out_el(k), side, s.radio.spacing(), s.radio.wavelength());
            EXPECT_NEAR(std::abs(ris_cascade(out, p.reflection(k), in)), side * side, 1e-9 * side * side);
        }
    }
}

TEST(Phases, WrapIntoHalfOpenCircle)
{
    EXPECT_EQ(wrap_phase(0.0), 0.0);
    EXPECT_EQ(wrap_phase(kTwoPi), 0.0);
    EXPECT_NEAR(wrap_phase(-0.5), kTwoPi - 0.5, 1e-15);
    EXPECT_NEAR(wrap_phase(7.0 * kPi), kPi, 1e-12);
    EXPECT_LT(wrap_phase(-1e-18), kTwoPi);
}

TEST(Phases, FlattenRoundTrip)
{
    const Scenario s = test::small_reference_scenario();
    const PhaseProfile p = test::seeded_phases(s, 8);
    const PhaseProfile q = PhaseProfile::unflatten(s, p.flatten(), p.delta);
    ASSERT_EQ(q.theta.size(), p.theta.size());
    for (std::size_t k = 0; k < p.theta.size(); ++k)
        EXPECT_EQ(q.theta[k], p.theta[k]);
    EXPECT_THROW(PhaseProfile::unflatten(s, Eigen::VectorXd::Zero(5), 1.0), ConfigError);
}

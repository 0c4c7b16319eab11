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

#pragma once

#include "risloc/channel.hpp"
#include "risloc/fim.hpp"
#include "risloc/geometry.hpp"
#include "risloc/scenario.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace risloc::test
{

// The reference deployment with small arrays so oracle checks run in milliseconds.
inline Scenario small_reference_scenario()
{
    Scenario s;
    s.bs = {0.0, 0.0, 40.0};
    s.mu = {90.0, 30.0, 0.0};
    s.rotation = kPi / 4.0;
    for (const Eigen::Vector3d &pos : {Eigen::Vector3d(60, 45, 15), Eigen::Vector3d(50, 50, 5),
                                       Eigen::Vector3d(40, 20, 10)})
    {
        RisPanel panel;
        panel.position = pos;
        panel.side = 4;
        panel.pathloss_exponent = 2.2;
        panel.shadowing_sigma_db = 7.0;
        s.ris.push_back(panel);
    }
    s.radio.carrier_hz = 4.9e9;
    s.radio.bandwidth_hz = 20e6;
    s.radio.subcarriers = 16;
    s.radio.tx_antennas = 8;
    s.radio.rx_antennas = 4;
    s.radio.tx_power_w = 1.0;
    s.radio.noise_psd_w_per_hz = std::pow(10.0, (-174.0 - 30.0) / 10.0);
    s.pathloss.los_exponent = 3.7;
    s.pathloss.los_shadowing_sigma_db = 4.0;
    return s;
}

// Random deployment kept away from the arcsin/arccos singularities so that
// finite differences stay well conditioned.
inline Scenario random_scenario(std::mt19937_64 &rng, int ris_count)
{
    std::uniform_real_distribution<double> xy(-100.0, 100.0);
    std::uniform_real_distribution<double> bs_h(10.0, 50.0);
    std::uniform_real_distribution<double> ris_h(2.0, 30.0);
    std::uniform_real_distribution<double> rot(0.1, kPi);

    auto grazing = [](double num, double den) { return std::abs(num / den) > 0.97; };

    for (;;)
    {
        Scenario s = small_reference_scenario();
        s.ris.resize(static_cast<std::size_t>(ris_count), s.ris.front());
        s.bs = {xy(rng) * 0.5, xy(rng) * 0.5, bs_h(rng)};
        s.mu = {xy(rng), xy(rng), 0.0};
        s.rotation = rot(rng);
        for (auto &panel : s.ris)
            panel.position = {xy(rng), xy(rng), ris_h(rng)};

        const Eigen::Vector3d dq = s.mu - s.bs;
        const double ca = std::cos(s.rotation), sa = std::sin(s.rotation);
        bool ok = std::hypot(dq.x(), dq.y()) > 5.0 && !grazing(dq.x(), dq.norm()) &&
                  !grazing(dq.x() * ca - dq.y() * sa, dq.norm());
        for (const auto &panel : s.ris)
        {
            const Eigen::Vector3d dp = s.mu - panel.position;
            const Eigen::Vector3d dqs = s.bs - panel.position;
            const double rho = std::hypot(dp.x(), dp.y());
            ok = ok && rho > 5.0 && std::abs(dp.x()) > 2.0 && std::hypot(dqs.x(), dqs.y()) > 5.0 &&
                 !grazing(dp.x() * ca - dp.y() * sa, dp.norm());
        }
        if (ok)
            return s;
    }
}

// Position-dependent part of eta computed straight from the geometry (gains zero).
inline Eigen::VectorXd geometric_eta(const Scenario &s)
{
    const GeometryOut g = compute_geometry(s);
    ChannelRealization r;
    r.h = Eigen::VectorXcd::Zero(s.ris_count() + 1);
    return channel_params(g, r);
}

inline PhaseProfile seeded_phases(const Scenario &s, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    PhaseProfile p = PhaseProfile::zeros(s);
    for (auto &t : p.theta)
        for (int i = 0; i < t.size(); ++i)
            t(i) = u(rng);
    return p;
}

} // namespace risloc::test

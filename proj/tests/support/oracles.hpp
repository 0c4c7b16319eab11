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

#include "test_support.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace risloc::test
{

struct Perturbed
{
    GeometryOut geometry;
    ChannelRealization realization;
};

// Writes eta back into a geometry/realization pair so that mean_signal (the
// channel-matrix route) can be evaluated at an arbitrary parameter vector.
inline Perturbed with_eta(const GeometryOut &g, const ChannelRealization &r, const Eigen::VectorXd &eta)
{
    const ParamLayout L{g.ris_count()};
    Perturbed p{g, r};
    for (int path = 0; path <= L.K; ++path)
    {
        p.geometry.tau(path) = eta(L.tau(path));
        p.geometry.theta_rx(path) = eta(L.theta_rx(path));
        p.realization.h(path) = {eta(L.h_re(path)), eta(L.h_im(path))};
    }
    p.geometry.theta_tx0 = eta(L.theta_tx0());
    for (int k = 0; k < L.K; ++k)
    {
        p.geometry.phi_out_az(k) = eta(L.phi_az(k));
        p.geometry.phi_out_el(k) = eta(L.phi_el(k));
    }
    return p;
}

// Step 1e-7 in natural units: radians for angles, unit gain for h, and
// 1e-7 / (2 pi B) seconds for delays so the subcarrier phase moves by ~1e-7 rad.
inline double fd_step(const ParamLayout &L, int m, double bandwidth)
{
    if (m <= L.tau(L.K))
        return 1e-7 / (kTwoPi * bandwidth);
    return 1e-7;
}

struct MuOracle
{
    Scenario scenario;
    GeometryOut geometry;
    ChannelRealization realization;
    Precoder precoder;
    PhaseProfile phases;

    explicit MuOracle(Scenario s, unsigned phase_seed = 1)
        : scenario(std::move(s)), geometry(compute_geometry(scenario)),
          realization(make_realization(scenario, geometry)), precoder(default_precoder(scenario, geometry)),
          phases(test::seeded_phases(scenario, phase_seed))
    {
    }

    Eigen::VectorXcd oracle_mean(const Eigen::VectorXd &eta, int n) const
    {
        const Perturbed p = with_eta(geometry, realization, eta);
        return mean_signal(scenario, p.geometry, phases, p.realization, precoder, n);
    }

    Eigen::MatrixXcd oracle_derivatives(const Eigen::VectorXd &eta, int n) const
    {
        const ParamLayout L{scenario.ris_count()};
        Eigen::MatrixXcd D(scenario.radio.rx_antennas, L.size());
        for (int m = 0; m < L.size(); ++m)
        {
            const double h = fd_step(L, m, scenario.radio.bandwidth_hz);
            Eigen::VectorXd plus = eta, minus = eta;
            plus(m) += h;
            minus(m) -= h;
            D.col(m) = (oracle_mean(plus, n) - oracle_mean(minus, n)) / (2.0 * h);
        }
        return D;
    }

    SignalModel model() const { return SignalModel(scenario, geometry, phases, realization, precoder); }
};


// Largest violation of |numeric - analytic| <= rel * |analytic| + min(floor, floor * max|column|),
// as a ratio to the allowed error (<= 1 means every entry passes).
inline double derivative_violation(const Eigen::MatrixXcd &analytic, const Eigen::MatrixXcd &numeric, double rel,
                                   double floor)
{
    double worst = 0.0;
    for (int m = 0; m < analytic.cols(); ++m)
    {
        const double col_floor = std::min(floor, floor * analytic.col(m).cwiseAbs().maxCoeff());
        for (int i = 0; i < analytic.rows(); ++i)
        {
            const double allowed = rel * std::abs(analytic(i, m)) + col_floor;
            const double err = std::abs(numeric(i, m) - analytic(i, m));
            worst = std::max(worst, allowed > 0.0 ? err / allowed : (err > 0.0 ? INFINITY : 0.0));
        }
    }
    return worst;
}

// Central differences of the position-dependent parameters with respect to
// (p_x, p_y, alpha); delay rows are returned in seconds per metre.
inline Eigen::MatrixXd jacobian_by_differences(const Scenario &s)
{
    const int cols = static_cast<int>(geometric_eta(s).size());
    Eigen::MatrixXd fd(3, cols);
    for (int row = 0; row < 3; ++row)
    {
        Scenario plus = s, minus = s;
        double &p = row < 2 ? plus.mu(row) : plus.rotation;
        double &q = row < 2 ? minus.mu(row) : minus.rotation;
        const double h = 1e-6 * std::max(1.0, std::abs(p));
        p += h;
        q -= h;
        fd.row(row) = (geometric_eta(plus) - geometric_eta(minus)).transpose() / (2.0 * h);
    }
    return fd;
}

} // namespace risloc::test

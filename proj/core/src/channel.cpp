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
#include "risloc/random.hpp"

#include <cmath>
#include <string>

namespace risloc
{

namespace
{

constexpr cdouble kJ{0.0, 1.0};

// 10 log10(64 pi^3)
const double kPathLossConstantDb = 10.0 * std::log10(64.0 * kPi * kPi * kPi);

} // namespace

Eigen::VectorXcd steer_ula(double angle, int n_elems, double spacing, double wavelength)
{
    const double step = kTwoPi / wavelength * spacing * std::sin(angle);
    Eigen::VectorXcd v(n_elems);
    for (int i = 0; i < n_elems; ++i)
        v(i) = std::polar(1.0, step * i);
    return v;
}

Eigen::VectorXcd steer_upa(double azimuth, double elevation, int side, double spacing, double wavelength)
{
    const double k = kTwoPi / wavelength * spacing;
    const double step_b = k * std::cos(elevation);
    const double step_a = k * std::sin(elevation) * std::sin(azimuth);
    Eigen::VectorXcd v(side * side);
    for (int b = 0; b < side; ++b)
        for (int a = 0; a < side; ++a)
            v(a + b * side) = std::polar(1.0, step_b * b) * std::polar(1.0, step_a * a);
    return v;
}

double wrap_phase(double theta)
{
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2 pi
    if (w >= kTwoPi)
        w = 0.0;
    return w;
}

PhaseProfile PhaseProfile::zeros(const Scenario &scenario)
{
    PhaseProfile out;
    out.delta = scenario.ris_amplitude;
    for (const auto &panel : scenario.ris)
        out.theta.push_back(Eigen::VectorXd::Zero(panel.elements()));
    return out;
}

int PhaseProfile::total_elements() const
{
    int n = 0;
    for (const auto &t : theta)
        n += static_cast<int>(t.size());
    return n;
}

Eigen::VectorXd PhaseProfile::flatten() const
{
    Eigen::VectorXd flat(total_elements());
    int offset = 0;
    for (const auto &t : theta)
    {
        flat.segment(offset, t.size()) = t;
        offset += static_cast<int>(t.size());
    }
    return flat;
}

PhaseProfile PhaseProfile::unflatten(const Scenario &scenario, const Eigen::VectorXd &flat, double delta)
{
    PhaseProfile out;
    out.delta = delta;
    int offset = 0;
    for (const auto &panel : scenario.ris)
    {
        Eigen::VectorXd t(panel.elements());
        for (int i = 0; i < t.size(); ++i)
            t(i) = wrap_phase(flat(offset + i));
        offset += panel.elements();
        out.theta.push_back(std::move(t));
    }
    if (offset != flat.size())
        throw ConfigError("PhaseProfile::unflatten: expected " + std::to_string(offset) + " phases, got " +
                          std::to_string(flat.size()));
    return out;
}

Eigen::VectorXcd PhaseProfile::reflection(int ris) const
{
    const auto &t = theta.at(static_cast<std::size_t>(ris));
    Eigen::VectorXcd d(t.size());
    for (int i = 0; i < t.size(); ++i)
        d(i) = std::polar(delta, t(i));
    return d;
}

cdouble ris_cascade(const Eigen::VectorXcd &out, const Eigen::VectorXcd &reflection, const Eigen::VectorXcd &in)
{
    return out.dot(reflection.cwiseProduct(in)); // dot() conjugates its left operand
}

PathLoss path_loss_los(double d0, double exponent, double carrier_hz, double shadow_db)
{
    const double f_ghz = carrier_hz * 1e-9;
    PathLoss pl;
    pl.db = kPathLossConstantDb + 10.0 * exponent * std::log10(d0) + 20.0 * std::log10(f_ghz) + shadow_db;
    pl.linear = std::pow(10.0, pl.db / 10.0);
    return pl;
}

PathLoss path_loss_ris(double d1, double d2, double exponent, double carrier_hz, double shadow_db)
{
    const double f_ghz = carrier_hz * 1e-9;
    PathLoss pl;
    pl.db = kPathLossConstantDb + 10.0 * exponent * std::log10(d1 * d2) + 40.0 * std::log10(f_ghz) + shadow_db;
    pl.linear = std::pow(10.0, pl.db / 10.0);
    return pl;
}

double shadow_fading_db(const Scenario &scenario, int path)
{
    if (scenario.pathloss.shadowing == Shadowing::Deterministic)
        return 0.0;
    const double sigma = path == 0 ? scenario.pathloss.los_shadowing_sigma_db
                                   : scenario.ris.at(static_cast<std::size_t>(path - 1)).shadowing_sigma_db;
    return sigma * keyed_normal({scenario.pathloss.shadowing_seed, static_cast<std::uint64_t>(path)});
}

PathLoss path_loss(const Scenario &scenario, const GeometryOut &geometry, int path)
{
    const double xi = shadow_fading_db(scenario, path);
    if (path == 0)
        return path_loss_los(geometry.d0, scenario.pathloss.los_exponent, scenario.radio.carrier_hz, xi);
    const auto k = static_cast<std::size_t>(path - 1);
    return path_loss_ris(geometry.d1(path - 1), geometry.d2(path - 1), scenario.ris.at(k).pathloss_exponent,
                         scenario.radio.carrier_hz, xi);
}

Precoder default_precoder(const Scenario &scenario, const GeometryOut &geometry)
{
    const int K = scenario.ris_count();
    const auto &radio = scenario.radio;
    if (radio.beams && *radio.beams != K + 1)
        throw ConfigError("default precoder needs M_t = K + 1 = " + std::to_string(K + 1) + ", scenario sets " +
                          std::to_string(*radio.beams));
    const int Nt = radio.tx_antennas;
    const double lambda = radio.wavelength();
    const double d = radio.spacing();
    const double norm = 1.0 / std::sqrt(static_cast<double>(Nt));

    Precoder pc;
    pc.F.resize(Nt, K + 1);
    pc.F.col(0) = steer_ula(geometry.theta_tx0, Nt, d, lambda) * norm;
    for (int k = 0; k < K; ++k)
        pc.F.col(k + 1) = steer_ula(geometry.theta_tx_ris(k), Nt, d, lambda) * norm;
    pc.x = Eigen::VectorXcd::Constant(K + 1, cdouble(1.0 / std::sqrt(static_cast<double>(K + 1)), 0.0));
    return pc;
}

ChannelRealization make_realization(const Scenario &scenario, const GeometryOut &geometry)
{
    const int K = scenario.ris_count();
    const double antennas = static_cast<double>(scenario.radio.tx_antennas) * scenario.radio.rx_antennas;
    ChannelRealization r;
    r.pathloss_db.resize(K + 1);
    r.rho.resize(K + 1);
    r.gamma.resize(K + 1);
    r.h.resize(K + 1);
    for (int path = 0; path <= K; ++path)
    {
        const PathLoss pl = path_loss(scenario, geometry, path);
        r.pathloss_db(path) = pl.db;
        r.rho(path) = pl.linear;
        r.gamma(path) = std::sqrt(antennas / pl.linear);
        r.h(path) = scenario.gain(path);
    }
    return r;
}

cdouble subcarrier_rotation(double bandwidth_hz, int n, int subcarriers, double tau)
{
    return std::polar(1.0, kTwoPi * bandwidth_hz * (static_cast<double>(n) / subcarriers) * tau);
}

Eigen::MatrixXcd path_channel(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                              const ChannelRealization &realization, int path, int n)
{
    const auto &radio = scenario.radio;
    const double lambda = radio.wavelength();
    const double d = radio.spacing();
    const cdouble rot = subcarrier_rotation(radio.bandwidth_hz, n, radio.subcarriers, geometry.tau(path));
    const Eigen::VectorXcd a_rx = steer_ula(geometry.theta_rx(path), radio.rx_antennas, d, lambda);
    const cdouble scale = realization.gamma(path) * realization.h(path) * rot;

    if (path == 0)
    {
        const Eigen::VectorXcd a_tx = steer_ula(geometry.theta_tx0, radio.tx_antennas, d, lambda);
        return scale * a_rx * a_tx.adjoint();
    }
    const int k = path - 1;
    const int side = scenario.ris.at(static_cast<std::size_t>(k)).side;
    const Eigen::VectorXcd a_tx = steer_ula(geometry.theta_tx_ris(k), radio.tx_antennas, d, lambda);
    const Eigen::VectorXcd a_in = steer_upa(geometry.phi_in_az(k), geometry.phi_in_el(k), side, d, lambda);
    const Eigen::VectorXcd a_out = steer_upa(geometry.phi_out_az(k), geometry.phi_out_el(k), side, d, lambda);
    // H_IM Theta H_BI collapses to a rank-one term through the scalar cascade.
    const cdouble cascade = ris_cascade(a_out, phases.reflection(k), a_in);
    return (scale * cascade) * a_rx * a_tx.adjoint();
}

Eigen::MatrixXcd channel_matrix(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                                const ChannelRealization &realization, int n)
{
    Eigen::MatrixXcd H = path_channel(scenario, geometry, phases, realization, 0, n);
    for (int path = 1; path <= scenario.ris_count(); ++path)
        H += path_channel(scenario, geometry, phases, realization, path, n);
    return H;
}

Eigen::VectorXcd mean_signal(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                             const ChannelRealization &realization, const Precoder &precoder, int n)
{
    return channel_matrix(scenario, geometry, phases, realization, n) * (precoder.F * precoder.x);
}

Eigen::VectorXcd mean_signal(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                             const ChannelRealization &realization, int n)
{
    return mean_signal(scenario, geometry, phases, realization, default_precoder(scenario, geometry), n);
}

} // namespace risloc

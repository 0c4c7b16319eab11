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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace risloc
{

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Planar reflecting surface: a side x side UPA with its own reflected-link
// path-loss parameters. No rotation is modelled for RIS arrays.
struct RisPanel
{
    Eigen::Vector3d position = Eigen::Vector3d::Zero(); // m
    int side = 1;                                       // L; element count is L*L
    double pathloss_exponent = 2.0;
    double shadowing_sigma_db = 0.0;

    int elements() const { return side * side; }
};

struct RadioConfig
{
    double carrier_hz = 0.0;
    double bandwidth_hz = 0.0;
    int subcarriers = 1;
    int tx_antennas = 1;
    int rx_antennas = 1;
    std::optional<int> beams;                // unset: K + 1 (one beam per path)
    std::optional<double> element_spacing_m; // unset: half wavelength
    double tx_power_w = 1.0;
    double noise_psd_w_per_hz = 1.0;

    double wavelength() const { return kSpeedOfLight / carrier_hz; }
    double spacing() const { return element_spacing_m.value_or(0.5 * wavelength()); }
    int beam_count(int ris_count) const { return beams.value_or(ris_count + 1); }
};

enum class Shadowing
{
    Deterministic, // xi = 0 on every link
    Sampled,       // xi ~ N(0, sigma^2) per link, keyed by (seed, link)
};

struct PathLossConfig
{
    double los_exponent = 2.0;
    double los_shadowing_sigma_db = 0.0;
    Shadowing shadowing = Shadowing::Deterministic;
    std::uint64_t shadowing_seed = 0;
};

// Full system description. All quantities are SI and linear; unit
// conversions (dBm, GHz) happen at load time or inside path_loss().
struct Scenario
{
    Eigen::Vector3d bs = Eigen::Vector3d::Zero(); // q
    Eigen::Vector3d mu = Eigen::Vector3d::Zero(); // p, with p_z == 0
    double rotation = kPi / 4.0;                  // MU array rotation, (0, pi]
    std::vector<RisPanel> ris;
    RadioConfig radio;
    PathLossConfig pathloss;
    double ris_amplitude = 1.0;                  // delta
    std::vector<std::complex<double>> gains;     // per path 0..K; empty means all 1

    int ris_count() const { return static_cast<int>(ris.size()); }
    std::complex<double> gain(int path) const;

    // First `count` panels in declaration order; gains are truncated to match.
    Scenario with_active_ris(int count) const;
    // Every panel resized to side x side.
    Scenario with_ris_side(int side) const;
};

// Checks every structural invariant that does not need trigonometry.
// Throws InvariantError naming the violated condition.
void validate(const Scenario &scenario);

} // namespace risloc

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

#include "risloc/scenario.hpp"

#include "risloc/errors.hpp"

#include <cmath>
#include <string>

namespace risloc
{

std::complex<double> Scenario::gain(int path) const
{
    if (gains.empty())
        return {1.0, 0.0};
    return gains.at(static_cast<std::size_t>(path));
}

Scenario Scenario::with_active_ris(int count) const
{
    if (count < 0 || count > ris_count())
        throw ConfigError("with_active_ris: count " + std::to_string(count) + " outside [0, " +
                          std::to_string(ris_count()) + "]");
    Scenario out = *this;
    out.ris.resize(static_cast<std::size_t>(count));
    if (!out.gains.empty())
        out.gains.resize(static_cast<std::size_t>(count) + 1);
    return out;
}

Scenario Scenario::with_ris_side(int side) const
{
    Scenario out = *this;
    for (auto &panel : out.ris)
        panel.side = side;
    return out;
}

namespace
{

void require(bool condition, const std::string &message)
{
    if (!condition)
        throw InvariantError(message);
}

bool finite(const Eigen::Vector3d &v) { return v.allFinite(); }

} // namespace

void validate(const Scenario &s)
{
    require(finite(s.bs), "bs: position must be finite");
    require(finite(s.mu), "mu: position must be finite");
    require(s.mu.z() == 0.0, "mu: p_z must be exactly 0");
    require(std::isfinite(s.rotation) && s.rotation > 0.0 && s.rotation <= kPi,
            "mu.rotation: must lie in (0, pi]");
    require((s.mu - s.bs).norm() >= 1e-9, "DegenerateGeometry: MU coincides with BS");

    for (std::size_t k = 0; k < s.ris.size(); ++k)
    {
        const auto &panel = s.ris[k];
        const std::string where = "ris[" + std::to_string(k) + "]";
        require(finite(panel.position), where + ": position must be finite");
        require(panel.position.z() > 0.0, where + ": s_z must be > 0");
        require(panel.side >= 1, where + ": side must be >= 1");
        require(std::isfinite(panel.pathloss_exponent), where + ": path-loss exponent must be finite");
        require(panel.shadowing_sigma_db >= 0.0, where + ": shadowing sigma must be >= 0");
        require((s.mu - panel.position).norm() >= 1e-9, "DegenerateGeometry: MU coincides with " + where);
        require((s.bs - panel.position).norm() >= 1e-9, "DegenerateGeometry: BS coincides with " + where);
    }

    const auto &r = s.radio;
    require(r.carrier_hz > 0.0, "radio.carrier_hz must be > 0");
    require(r.bandwidth_hz > 0.0, "radio.bandwidth_hz must be > 0");
    require(r.subcarriers >= 1, "radio.subcarriers must be >= 1");
    require(r.tx_antennas >= 1, "radio.tx_antennas must be >= 1");
    require(r.rx_antennas >= 1, "radio.rx_antennas must be >= 1");
    require(r.tx_power_w > 0.0, "radio.tx_power must be > 0");
    require(r.noise_psd_w_per_hz > 0.0, "radio.noise_psd must be > 0");
    if (r.element_spacing_m)
        require(*r.element_spacing_m > 0.0, "radio.element_spacing_m must be > 0");
    const int beams = r.beam_count(s.ris_count());
    require(beams >= 1 && beams <= r.tx_antennas, "radio.beams: need 1 <= M_t <= N_t");

    require(s.ris_amplitude > 0.0 && s.ris_amplitude <= 1.0, "ris_amplitude: delta must lie in (0, 1]");
    require(s.gains.empty() || s.gains.size() == s.ris.size() + 1, "gains: need exactly K + 1 entries");

    require(s.pathloss.los_shadowing_sigma_db >= 0.0, "pathloss.los_shadowing_sigma_db must be >= 0");
}

} // namespace risloc

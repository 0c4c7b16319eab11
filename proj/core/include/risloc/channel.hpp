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

#include "risloc/geometry.hpp"
#include "risloc/scenario.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace risloc
{

using cdouble = std::complex<double>;

// ULA response, entry i (0-based): exp(j i (2 pi / lambda) d sin(angle)).
Eigen::VectorXcd steer_ula(double angle, int n_elems, double spacing, double wavelength);

// UPA response of side L. Entry a + b*L (0-based a, b) is
//   exp(j (2 pi / lambda) d [b cos(el) + a sin(el) sin(az)]).
Eigen::VectorXcd steer_upa(double azimuth, double elevation, int side, double spacing, double wavelength);

// Maps any angle into [0, 2 pi).
double wrap_phase(double theta);

// Per-RIS phase shifts; Theta_k = delta * diag(exp(j theta_k)).
struct PhaseProfile
{
    double delta = 1.0;
    std::vector<Eigen::VectorXd> theta;

    static PhaseProfile zeros(const Scenario &scenario);

    int total_elements() const;
    Eigen::VectorXd flatten() const;
    // Inverse of flatten() for the panel sizes of `scenario`; phases are wrapped.
    static PhaseProfile unflatten(const Scenario &scenario, const Eigen::VectorXd &flat, double delta);
    // Diagonal of Theta_k.
    Eigen::VectorXcd reflection(int ris) const;
};

// alpha_out^H Theta alpha_in
cdouble ris_cascade(const Eigen::VectorXcd &out, const Eigen::VectorXcd &reflection, const Eigen::VectorXcd &in);

// Log-distance path loss. Both models take the carrier in Hz and evaluate the
// frequency term with f_c expressed in GHz.
struct PathLoss
{
    double db = 0.0;
    double linear = 1.0;
};

PathLoss path_loss_los(double d0, double exponent, double carrier_hz, double shadow_db = 0.0);
PathLoss path_loss_ris(double d1, double d2, double exponent, double carrier_hz, double shadow_db = 0.0);

// Shadow-fading offset of `path` in dB: zero in deterministic mode, otherwise a
// Gaussian draw keyed by (shadowing seed, path) that is reused on all subcarriers.
double shadow_fading_db(const Scenario &scenario, int path);

// Path loss of `path` (0 = LoS) including shadowing.
PathLoss path_loss(const Scenario &scenario, const GeometryOut &geometry, int path);

struct Precoder
{
    Eigen::MatrixXcd F; // N_t x M_t, unit-norm columns
    Eigen::VectorXcd x; // pilot, identical on every subcarrier, |x|^2 = 1
};

// One beam per path: column 0 points at the MU, column k at RIS k; the pilot
// spreads unit power evenly over the beams. Throws ConfigError when the
// scenario pins M_t to anything other than K + 1.
Precoder default_precoder(const Scenario &scenario, const GeometryOut &geometry);

struct ChannelRealization
{
    Eigen::VectorXd pathloss_db; // per path
    Eigen::VectorXd rho;         // linear path loss
    Eigen::VectorXd gamma;       // sqrt(N_t N_r / rho)
    Eigen::VectorXcd h;          // complex gains
};

ChannelRealization make_realization(const Scenario &scenario, const GeometryOut &geometry);

// exp(j 2 pi B (n / N) tau), n in 1..N.
cdouble subcarrier_rotation(double bandwidth_hz, int n, int subcarriers, double tau);

// Single-path channel H_0[n] (path 0) or H_k[n] (path k >= 1), N_r x N_t.
Eigen::MatrixXcd path_channel(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                              const ChannelRealization &realization, int path, int n);

// H[n] = H_0[n] + sum_k H_k[n].
Eigen::MatrixXcd channel_matrix(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                                const ChannelRealization &realization, int n);

// Noiseless received signal mu[n] = H[n] F x (transmit power excluded).
Eigen::VectorXcd mean_signal(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                             const ChannelRealization &realization, const Precoder &precoder, int n);
Eigen::VectorXcd mean_signal(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                             const ChannelRealization &realization, int n);

} // namespace risloc

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

#include "risloc/scenario.hpp"

#include <Eigen/Dense>

namespace risloc
{

// Index map of the channel-parameter vector
//   eta = [tau(K+1), theta_tx0, theta_rx(K+1), phi_out_az(K), phi_out_el(K), h_re(K+1), h_im(K+1)].
// `path` runs over 0..K (0 is line of sight), `ris` over 0..K-1 (path ris+1).
struct ParamLayout
{
    int K = 0;

    int size() const { return 6 * K + 5; }
    int tau(int path) const { return path; }
    int theta_tx0() const { return K + 1; }
    int theta_rx(int path) const { return K + 2 + path; }
    int phi_az(int ris) const { return 2 * K + 3 + ris; }
    int phi_el(int ris) const { return 3 * K + 3 + ris; }
    int h_re(int path) const { return 4 * K + 3 + path; }
    int h_im(int path) const { return 5 * K + 4 + path; }

    // First column of the gain blocks; every column from here on is a gain.
    int gain_begin() const { return h_re(0); }
};

struct GeometryOut
{
    double d0 = 0.0;               // |q - p|
    Eigen::VectorXd d1;            // |q - s_k|
    Eigen::VectorXd d2;            // |p - s_k|
    Eigen::VectorXd tau;           // [tau_0 .. tau_K], s
    double theta_tx0 = 0.0;        // BS AOD toward the MU
    Eigen::VectorXd theta_tx_ris;  // BS AOD toward each RIS
    Eigen::VectorXd theta_rx;      // [theta_rx_0 .. theta_rx_K], MU AOA
    Eigen::VectorXd phi_in_az;     // RIS azimuth AOA (BS side)
    Eigen::VectorXd phi_in_el;     // RIS elevation AOA (BS side)
    Eigen::VectorXd phi_out_az;    // RIS azimuth AOD (MU side)
    Eigen::VectorXd phi_out_el;    // RIS elevation AOD (MU side)

    int ris_count() const { return static_cast<int>(d1.size()); }
};

// Delays and angles of every path. Throws DegenerateGeometry when two nodes
// coincide, a horizontal projection vanishes, or an inverse-trig argument
// leaves [-1, 1] by more than 1e-12 (smaller excursions are clamped).
GeometryOut compute_geometry(const Scenario &scenario);

// 3 x (6K+5) matrix of derivatives of eta with respect to (p_x, p_y, alpha).
// Gain columns are zero; the alpha row is nonzero only in the theta_rx block.
struct JacobianT
{
    ParamLayout layout;
    Eigen::MatrixXd matrix;
};

// Throws SingularJacobian when a denominator falls below 1e-12.
JacobianT jacobian_T(const Scenario &scenario);

// arcsin/arccos with the clamp-or-throw rule used throughout the geometry.
double checked_asin(double x);
double checked_acos(double x);

} // namespace risloc

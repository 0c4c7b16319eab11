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
#include "risloc/geometry.hpp"
#include "risloc/scenario.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace risloc
{

enum class FimMode
{
    PaperLiteral, // J = T J_eta T^T with the gain columns of T left at zero
    Efim,         // gains kept as nuisance parameters and eliminated by Schur complement
};

// Mean received signal as a function of the channel-parameter vector eta.
//
// Everything eta does not contain (BS/RIS-side angles, path losses, the
// precoder, the RIS reflection coefficients) is frozen at construction, so
// mean() and derivatives() can be evaluated at arbitrary eta. That is what the
// finite-difference checks perturb.
class SignalModel
{
public:
    SignalModel(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                const ChannelRealization &realization, const Precoder &precoder);

    const ParamLayout &layout() const { return layout_; }
    // eta at the scenario geometry and configured gains.
    const Eigen::VectorXd &nominal() const { return nominal_; }

    // mu[n] for subcarrier n in 1..N.
    Eigen::VectorXcd mean(const Eigen::VectorXd &eta, int n) const;
    // N_r x (6K+5) matrix whose column m is d mu[n] / d eta_m.
    Eigen::MatrixXcd derivatives(const Eigen::VectorXd &eta, int n) const;

    // J_eta = 2 P_TX / (N_0 B) * sum_n Re{ dmu^H dmu }, accumulated over n = 1..N in order.
    Eigen::MatrixXd fisher(const Eigen::VectorXd &eta) const;
    Eigen::MatrixXd fisher() const { return fisher(nominal_); }

    double fisher_prefactor() const;

private:
    struct RisFixed
    {
        int side = 1;
        cdouble tx_gain;           // alpha_TX(theta_TX,k)^H F x
        Eigen::VectorXcd incident; // Theta_k alpha_IN,k
    };

    // n-independent pieces of one path at a given eta.
    struct PathTerms
    {
        double tau = 0.0;
        Eigen::VectorXcd a_rx;   // alpha_RX(theta_RX)
        Eigen::VectorXcd da_rx;  // D_RX alpha_RX
        cdouble unit;            // gamma * cascade * tx gain (d mu / d h_R without the rotation)
        cdouble base;            // unit * h
        cdouble d_tx;            // LoS only: gamma h alpha_TX^H D_TX^H F x
        cdouble d_az;            // RIS only: gamma h alpha_OUT^H diag(c_az)^H Theta alpha_IN * tx gain
        cdouble d_el;
    };

    std::vector<PathTerms> path_terms(const Eigen::VectorXd &eta) const;
    void fill_derivatives(const std::vector<PathTerms> &terms, int n, Eigen::MatrixXcd &out) const;

    ParamLayout layout_;
    int rx_antennas_ = 1;
    int tx_antennas_ = 1;
    int subcarriers_ = 1;
    double bandwidth_hz_ = 0.0;
    double wavenumber_spacing_ = 0.0; // 2 pi d / lambda
    double tx_power_w_ = 0.0;
    double noise_psd_ = 0.0;
    Eigen::VectorXd gamma_;
    Eigen::VectorXcd beam_; // F x
    std::vector<RisFixed> ris_;
    Eigen::VectorXd nominal_;
};

// eta assembled from the geometry and the configured complex gains.
Eigen::VectorXd channel_params(const GeometryOut &geometry, const ChannelRealization &realization);

// Closed-form d mu[n] / d eta with the default precoder.
Eigen::MatrixXcd mu_derivatives(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                                const ChannelRealization &realization, int n);

Eigen::MatrixXd fim_eta(const Scenario &scenario, const PhaseProfile &phases, const ChannelRealization &realization);

struct PositionFim
{
    Eigen::Matrix3d J;
    double peb = 0.0; // m
    double reb = 0.0; // rad
};

// Position-domain FIM over (p_x, p_y, alpha) and the error bounds read from its
// inverse: PEB = sqrt(tr [J^-1]_{1:2,1:2}), REB = sqrt([J^-1]_{3,3}).
// Throws SingularFim when J is not positive definite or cond(J) > 1e12.
PositionFim position_fim(const Eigen::MatrixXd &J_eta, const JacobianT &T, FimMode mode);

// Bounds from an already-formed 3 x 3 position FIM.
PositionFim bounds_from_position_fim(const Eigen::Matrix3d &J);

struct FisherResult
{
    Eigen::MatrixXd J_eta;
    JacobianT T;
    Eigen::Matrix3d J;
    double peb = 0.0;
    double reb = 0.0;
    FimMode mode = FimMode::PaperLiteral;
};

// Caches everything that does not depend on the RIS phases, so repeated
// evaluation (the optimizer's inner loop) only rebuilds the RIS terms.
// evaluate() is const and safe to call concurrently.
class BoundsEvaluator
{
public:
    BoundsEvaluator(const Scenario &scenario, FimMode mode, std::optional<Precoder> precoder = std::nullopt);

    FisherResult evaluate(const PhaseProfile &phases) const;

    const Scenario &scenario() const { return scenario_; }
    const GeometryOut &geometry() const { return geometry_; }
    const ChannelRealization &realization() const { return realization_; }
    const Precoder &precoder() const { return precoder_; }
    FimMode mode() const { return mode_; }

private:
    Scenario scenario_;
    FimMode mode_;
    GeometryOut geometry_;
    JacobianT T_;
    ChannelRealization realization_;
    Precoder precoder_;
};

FisherResult evaluate_bounds(const Scenario &scenario, const PhaseProfile &phases, FimMode mode);

} // namespace risloc

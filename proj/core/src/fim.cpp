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

#include "risloc/fim.hpp"

#include "risloc/errors.hpp"

#include <cmath>
#include <sstream>

namespace risloc
{

namespace
{

constexpr cdouble kJ{0.0, 1.0};
constexpr double kMaxCondition = 1e12;

// D alpha for a ULA response: entry i scaled by j (2 pi d / lambda) cos(theta) i.
Eigen::VectorXcd ula_derivative(const Eigen::VectorXcd &a, double kd, double theta)
{
    Eigen::VectorXcd out(a.size());
    const double c = kd * std::cos(theta);
    for (int i = 0; i < a.size(); ++i)
        out(i) = kJ * (c * i) * a(i);
    return out;
}

} // namespace

SignalModel::SignalModel(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                         const ChannelRealization &realization, const Precoder &precoder)
    : layout_{scenario.ris_count()}
{
    const auto &radio = scenario.radio;
    rx_antennas_ = radio.rx_antennas;
    tx_antennas_ = radio.tx_antennas;
    subcarriers_ = radio.subcarriers;
    bandwidth_hz_ = radio.bandwidth_hz;
    wavenumber_spacing_ = kTwoPi / radio.wavelength() * radio.spacing();
    tx_power_w_ = radio.tx_power_w;
    noise_psd_ = radio.noise_psd_w_per_hz;
    gamma_ = realization.gamma;
    beam_ = precoder.F * precoder.x;

    if (static_cast<int>(phases.theta.size()) != layout_.K)
        throw ConfigError("phase profile has " + std::to_string(phases.theta.size()) + " panels, scenario has " +
                          std::to_string(layout_.K));

    const double lambda = radio.wavelength();
    const double d = radio.spacing();
    for (int k = 0; k < layout_.K; ++k)
    {
        RisFixed fixed;
        fixed.side = scenario.ris[k].side;
        if (phases.theta[k].size() != fixed.side * fixed.side)
            throw ConfigError("phase profile panel " + std::to_string(k) + " has the wrong element count");
        const Eigen::VectorXcd a_tx = steer_ula(geometry.theta_tx_ris(k), tx_antennas_, d, lambda);
        fixed.tx_gain = a_tx.dot(beam_);
        fixed.incident = phases.reflection(k).cwiseProduct(
            steer_upa(geometry.phi_in_az(k), geometry.phi_in_el(k), fixed.side, d, lambda));
        ris_.push_back(std::move(fixed));
    }
    nominal_ = channel_params(geometry, realization);
}

double SignalModel::fisher_prefactor() const
{
    return 2.0 * tx_power_w_ / (noise_psd_ * bandwidth_hz_);
}

std::vector<SignalModel::PathTerms> SignalModel::path_terms(const Eigen::VectorXd &eta) const
{
    const ParamLayout &L = layout_;
    const double kd = wavenumber_spacing_;
    std::vector<PathTerms> terms(L.K + 1);

    for (int path = 0; path <= L.K; ++path)
    {
        PathTerms &t = terms[path];
        const double theta_rx = eta(L.theta_rx(path));
        const cdouble h{eta(L.h_re(path)), eta(L.h_im(path))};
        t.tau = eta(L.tau(path));
        // steer_ula needs a wavelength; kd = 2 pi d / lambda is all it uses, so pass d = kd, lambda = 2 pi.
        t.a_rx = steer_ula(theta_rx, rx_antennas_, kd, kTwoPi);
        t.da_rx = ula_derivative(t.a_rx, kd, theta_rx);

        if (path == 0)
        {
            const double theta_tx = eta(L.theta_tx0());
            const Eigen::VectorXcd a_tx = steer_ula(theta_tx, tx_antennas_, kd, kTwoPi);
            const cdouble tx_gain = a_tx.dot(beam_);
            // alpha_TX^H D_TX^H F x = (D_TX alpha_TX)^H F x
            const cdouble d_tx_gain = ula_derivative(a_tx, kd, theta_tx).dot(beam_);
            t.unit = gamma_(0) * tx_gain;
            t.base = t.unit * h;
            t.d_tx = gamma_(0) * h * d_tx_gain;
            continue;
        }

        const int k = path - 1;
        const RisFixed &fixed = ris_[k];
        const double az = eta(L.phi_az(k));
        const double el = eta(L.phi_el(k));
        const Eigen::VectorXcd a_out = steer_upa(az, el, fixed.side, kd, kTwoPi);

        // c_az = j kd a cos(az) sin(el), c_el = j kd [a sin(az) cos(el) - b sin(el)]
        const double ca = kd * std::cos(az) * std::sin(el);
        const double ce_a = kd * std::sin(az) * std::cos(el);
        const double ce_b = -kd * std::sin(el);
        cdouble cascade = 0.0, cascade_az = 0.0, cascade_el = 0.0;
        for (int b = 0; b < fixed.side; ++b)
        {
            for (int a = 0; a < fixed.side; ++a)
            {
                const int i = a + b * fixed.side;
                const cdouble term = std::conj(a_out(i)) * fixed.incident(i);
                cascade += term;
                // conj(c) = -j * (real coefficient)
                cascade_az += -kJ * (ca * a) * term;
                cascade_el += -kJ * (ce_a * a + ce_b * b) * term;
            }
        }
        const cdouble common = gamma_(path) * fixed.tx_gain;
        t.unit = common * cascade;
        t.base = t.unit * h;
        t.d_az = common * h * cascade_az;
        t.d_el = common * h * cascade_el;
    }
    return terms;
}

void SignalModel::fill_derivatives(const std::vector<PathTerms> &terms, int n, Eigen::MatrixXcd &D) const
{
    const ParamLayout &L = layout_;
    const double omega = kTwoPi * bandwidth_hz_ * (static_cast<double>(n) / subcarriers_);
    D.setZero(rx_antennas_, L.size());

    for (int path = 0; path <= L.K; ++path)
    {
        const PathTerms &t = terms[path];
        const cdouble rot = std::polar(1.0, omega * t.tau);
        const cdouble base = t.base * rot;

        D.col(L.tau(path)) = (kJ * omega * base) * t.a_rx;
        D.col(L.theta_rx(path)) = base * t.da_rx;
        D.col(L.h_re(path)) = (t.unit * rot) * t.a_rx;
        D.col(L.h_im(path)) = (kJ * t.unit * rot) * t.a_rx;
        if (path == 0)
        {
            D.col(L.theta_tx0()) = (t.d_tx * rot) * t.a_rx;
        }
        else
        {
            D.col(L.phi_az(path - 1)) = (t.d_az * rot) * t.a_rx;
            D.col(L.phi_el(path - 1)) = (t.d_el * rot) * t.a_rx;
        }
    }
}

Eigen::VectorXcd SignalModel::mean(const Eigen::VectorXd &eta, int n) const
{
    const auto terms = path_terms(eta);
    const double omega = kTwoPi * bandwidth_hz_ * (static_cast<double>(n) / subcarriers_);
    Eigen::VectorXcd mu = Eigen::VectorXcd::Zero(rx_antennas_);
    for (const auto &t : terms)
        mu += (t.base * std::polar(1.0, omega * t.tau)) * t.a_rx;
    return mu;
}

Eigen::MatrixXcd SignalModel::derivatives(const Eigen::VectorXd &eta, int n) const
{
    Eigen::MatrixXcd D;
    fill_derivatives(path_terms(eta), n, D);
    return D;
}

Eigen::MatrixXd SignalModel::fisher(const Eigen::VectorXd &eta) const
{
    const auto terms = path_terms(eta);
    const int P = layout_.size();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(P, P);
    Eigen::MatrixXcd D;
    for (int n = 1; n <= subcarriers_; ++n)
    {
        fill_derivatives(terms, n, D);
        J.noalias() += (D.adjoint() * D).real();
    }
    return fisher_prefactor() * J;
}

Eigen::VectorXd channel_params(const GeometryOut &geometry, const ChannelRealization &realization)
{
    const int K = geometry.ris_count();
    const ParamLayout L{K};
    Eigen::VectorXd eta(L.size());
    for (int path = 0; path <= K; ++path)
    {
        eta(L.tau(path)) = geometry.tau(path);
        eta(L.theta_rx(path)) = geometry.theta_rx(path);
        eta(L.h_re(path)) = realization.h(path).real();
        eta(L.h_im(path)) = realization.h(path).imag();
    }
    eta(L.theta_tx0()) = geometry.theta_tx0;
    for (int k = 0; k < K; ++k)
    {
        eta(L.phi_az(k)) = geometry.phi_out_az(k);
        eta(L.phi_el(k)) = geometry.phi_out_el(k);
    }
    return eta;
}

Eigen::MatrixXcd mu_derivatives(const Scenario &scenario, const GeometryOut &geometry, const PhaseProfile &phases,
                                const ChannelRealization &realization, int n)
{
    const SignalModel model(scenario, geometry, phases, realization, default_precoder(scenario, geometry));
    return model.derivatives(model.nominal(), n);
}

Eigen::MatrixXd fim_eta(const Scenario &scenario, const PhaseProfile &phases, const ChannelRealization &realization)
{
    const GeometryOut geometry = compute_geometry(scenario);
    const SignalModel model(scenario, geometry, phases, realization, default_precoder(scenario, geometry));
    return model.fisher();
}

PositionFim bounds_from_position_fim(const Eigen::Matrix3d &J)
{
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(J, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || !(hi / lo <= kMaxCondition))
    {
        std::ostringstream msg;
        msg << "position FIM is not invertible (eigenvalues " << lo << " .. " << hi << ")";
        throw SingularFim(msg.str());
    }
    const Eigen::LLT<Eigen::Matrix3d> llt(J);
    if (llt.info() != Eigen::Success)
        throw SingularFim("position FIM Cholesky factorization failed");
    const Eigen::Matrix3d inv = llt.solve(Eigen::Matrix3d::Identity());

    PositionFim out;
    out.J = J;
    out.peb = std::sqrt(inv(0, 0) + inv(1, 1));
    out.reb = std::sqrt(inv(2, 2));
    return out;
}

PositionFim position_fim(const Eigen::MatrixXd &J_eta, const JacobianT &T, FimMode mode)
{
    const Eigen::MatrixXd &Tm = T.matrix;
    const int P = T.layout.size();
    if (J_eta.rows() != P || J_eta.cols() != P || Tm.rows() != 3 || Tm.cols() != P)
        throw ConfigError("position_fim: J_eta and T dimensions disagree");

    if (mode == FimMode::PaperLiteral)
        return bounds_from_position_fim(Tm * J_eta * Tm.transpose());

    // Rows of the augmented map: (p_x, p_y, alpha) followed by one row per gain parameter.
    const int gains = P - T.layout.gain_begin();
    Eigen::MatrixXd Taug = Eigen::MatrixXd::Zero(3 + gains, P);
    Taug.topRows(3) = Tm;
    Taug.bottomRightCorner(gains, gains).setIdentity();
    const Eigen::MatrixXd Jaug = Taug * J_eta * Taug.transpose();

    const Eigen::Matrix3d A = Jaug.topLeftCorner(3, 3);
    const Eigen::MatrixXd B = Jaug.topRightCorner(3, gains);
    const Eigen::MatrixXd C = Jaug.bottomRightCorner(gains, gains);
    const Eigen::LLT<Eigen::MatrixXd> llt(C);
    if (llt.info() != Eigen::Success)
        throw SingularFim("gain block of the FIM is not positive definite");
    const Eigen::Matrix3d schur = A - B * llt.solve(B.transpose());
    return bounds_from_position_fim(schur);
}

BoundsEvaluator::BoundsEvaluator(const Scenario &scenario, FimMode mode, std::optional<Precoder> precoder)
    : scenario_(scenario), mode_(mode)
{
    validate(scenario_);
    geometry_ = compute_geometry(scenario_);
    T_ = jacobian_T(scenario_);
    realization_ = make_realization(scenario_, geometry_);
    precoder_ = precoder ? std::move(*precoder) : default_precoder(scenario_, geometry_);
    if (precoder_.F.rows() != scenario_.radio.tx_antennas || precoder_.F.cols() != precoder_.x.size())
        throw ConfigError("precoder dimensions do not match N_t / M_t");
}

FisherResult BoundsEvaluator::evaluate(const PhaseProfile &phases) const
{
    const SignalModel model(scenario_, geometry_, phases, realization_, precoder_);
    FisherResult out;
    out.J_eta = model.fisher();
    out.T = T_;
    out.mode = mode_;
    const PositionFim pos = position_fim(out.J_eta, T_, mode_);
    out.J = pos.J;
    out.peb = pos.peb;
    out.reb = pos.reb;
    return out;
}

FisherResult evaluate_bounds(const Scenario &scenario, const PhaseProfile &phases, FimMode mode)
{
    return BoundsEvaluator(scenario, mode).evaluate(phases);
}

} // namespace risloc

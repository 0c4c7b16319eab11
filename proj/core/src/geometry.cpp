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

#include "risloc/geometry.hpp"

#include "risloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace risloc
{

namespace
{

constexpr double kTrigSlack = 1e-12;
constexpr double kMinDistance = 1e-9;
constexpr double kMinDenominator = 1e-12;

double clamp_unit(double x, const char *fn)
{
    if (!std::isfinite(x) || std::abs(x) > 1.0 + kTrigSlack)
    {
        std::ostringstream msg;
        msg.precision(17);
        msg << fn << " argument " << x << " outside [-1, 1]";
        throw DegenerateGeometry(msg.str());
    }
    return std::clamp(x, -1.0, 1.0);
}

double checked_distance(const Eigen::Vector3d &a, const Eigen::Vector3d &b, const char *what)
{
    const double d = (a - b).norm();
    if (!(d >= kMinDistance))
        throw DegenerateGeometry(std::string(what) + " distance below 1e-9 m");
    return d;
}

double horizontal(const Eigen::Vector3d &from, const Eigen::Vector3d &to, const char *what)
{
    const double h = std::hypot(to.x() - from.x(), to.y() - from.y());
    if (!(h >= kMinDistance))
        throw DegenerateGeometry(std::string(what) + " horizontal distance below 1e-9 m");
    return h;
}

// Projection of the in-plane offset onto the rotated MU array axis.
double rotated(double dx, double dy, double alpha)
{
    return dx * std::cos(alpha) - dy * std::sin(alpha);
}

double guarded(double denominator, const char *what)
{
    if (!(std::abs(denominator) >= kMinDenominator))
        throw SingularJacobian(std::string(what) + ": denominator below 1e-12");
    return denominator;
}

} // namespace

double checked_asin(double x) { return std::asin(clamp_unit(x, "arcsin")); }
double checked_acos(double x) { return std::acos(clamp_unit(x, "arccos")); }

GeometryOut compute_geometry(const Scenario &s)
{
    const int K = s.ris_count();
    const Eigen::Vector3d &q = s.bs;
    const Eigen::Vector3d &p = s.mu;
    const double alpha = s.rotation;

    GeometryOut g;
    g.d0 = checked_distance(q, p, "BS-MU");
    g.tau.resize(K + 1);
    g.theta_rx.resize(K + 1);
    g.d1.resize(K);
    g.d2.resize(K);
    g.theta_tx_ris.resize(K);
    g.phi_in_az.resize(K);
    g.phi_in_el.resize(K);
    g.phi_out_az.resize(K);
    g.phi_out_el.resize(K);

    g.tau(0) = g.d0 / kSpeedOfLight;
    g.theta_tx0 = checked_asin((p.x() - q.x()) / g.d0);
    g.theta_rx(0) = checked_asin(rotated(p.x() - q.x(), p.y() - q.y(), alpha) / g.d0);

    for (int k = 0; k < K; ++k)
    {
        const Eigen::Vector3d &sk = s.ris[k].position;
        const double d1 = checked_distance(q, sk, "BS-RIS");
        const double d2 = checked_distance(p, sk, "RIS-MU");
        g.d1(k) = d1;
        g.d2(k) = d2;
        g.tau(k + 1) = d1 / kSpeedOfLight + d2 / kSpeedOfLight;

        // MU side
        const double h_out = horizontal(sk, p, "RIS-MU");
        g.phi_out_az(k) = checked_asin((p.y() - sk.y()) / h_out);
        g.phi_out_el(k) = checked_acos(sk.z() / d2);
        g.theta_rx(k + 1) = checked_asin(rotated(p.x() - sk.x(), p.y() - sk.y(), alpha) / d2);

        // BS side: fixed by the known placement, mirrored from the MU-side maps
        const double h_in = horizontal(sk, q, "BS-RIS");
        g.theta_tx_ris(k) = checked_asin((sk.x() - q.x()) / d1);
        g.phi_in_az(k) = checked_asin((q.y() - sk.y()) / h_in);
        g.phi_in_el(k) = checked_acos((q.z() - sk.z()) / d1);
    }
    return g;
}

JacobianT jacobian_T(const Scenario &s)
{
    // Evaluating the geometry first applies the same degeneracy checks.
    (void)compute_geometry(s);

    const int K = s.ris_count();
    JacobianT out;
    out.layout = ParamLayout{K};
    out.matrix = Eigen::MatrixXd::Zero(3, out.layout.size());
    auto &T = out.matrix;
    const auto &L = out.layout;

    const Eigen::Vector3d &q = s.bs;
    const Eigen::Vector3d &p = s.mu;
    const double ca = std::cos(s.rotation);
    const double sa = std::sin(s.rotation);

    // Derivatives of arcsin(w / r) for an MU-side link, where r = |p - a|
    // and w = dx cos(alpha) - dy sin(alpha) with (dx, dy) = (p - a)_xy.
    auto fill_theta_rx = [&](int col, double dx, double dy, double r) {
        const double w = dx * ca - dy * sa;
        const double root = guarded(std::sqrt(std::max(0.0, r * r - w * w)), "theta_rx");
        T(0, col) = (ca - dx * w / (r * r)) / root;
        T(1, col) = (-sa - dy * w / (r * r)) / root;
        T(2, col) = (-dx * sa - dy * ca) / root;
    };

    // Line of sight
    {
        const double dx = p.x() - q.x();
        const double dy = p.y() - q.y();
        const double r = (q - p).norm();
        const double r2 = r * r;

        T(0, L.tau(0)) = dx / (kSpeedOfLight * r);
        T(1, L.tau(0)) = dy / (kSpeedOfLight * r);

        const double root = guarded(std::sqrt(std::max(0.0, r2 - dx * dx)), "theta_tx0");
        T(0, L.theta_tx0()) = root / r2;
        T(1, L.theta_tx0()) = -dx * dy / (root * r2);

        fill_theta_rx(L.theta_rx(0), dx, dy, r);
    }

    for (int k = 0; k < K; ++k)
    {
        const Eigen::Vector3d &sk = s.ris[k].position;
        const double dx = p.x() - sk.x();
        const double dy = p.y() - sk.y();
        const double r = (p - sk).norm();
        const double r2 = r * r;
        const int path = k + 1;

        T(0, L.tau(path)) = dx / (kSpeedOfLight * r);
        T(1, L.tau(path)) = dy / (kSpeedOfLight * r);

        // phi_az = arcsin(dy / rho); the |dx| keeps the map valid for dx < 0.
        const double rho2 = guarded(dx * dx + dy * dy, "phi_out_az");
        const double sgn = dx >= 0.0 ? 1.0 : -1.0;
        T(0, L.phi_az(k)) = -sgn * dy / rho2;
        T(1, L.phi_az(k)) = std::abs(dx) / rho2;

        // phi_el = arccos(s_z / r); s_z plays the role of the RIS height above the MU plane.
        const double height = sk.z() - p.z();
        const double root = guarded(std::sqrt(std::max(0.0, r2 - height * height)), "phi_out_el");
        T(0, L.phi_el(k)) = height * dx / (r2 * root);
        T(1, L.phi_el(k)) = height * dy / (r2 * root);

        fill_theta_rx(L.theta_rx(path), dx, dy, r);
    }
    return out;
}

} // namespace risloc

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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace risloc
{

struct PsoConfig
{
    int swarm_size = 64;
    int iterations = 300;
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    double v_max = kPi / 2.0; // per-dimension velocity clamp, rad
    std::uint64_t seed = 0;
    bool seed_baselines = true; // particle 0 = beam-aligned, particle 1 = random_phases(seed)
    int threads = 1;            // fitness evaluations per iteration run on this many workers

    // Throws ConfigError unless swarm_size >= 2, iterations >= 1, w in [0, 1), c1, c2 > 0, v_max > 0.
    void check() const;
};

// Result of minimising a function on the torus [0, 2 pi)^dims.
struct SwarmResult
{
    Eigen::VectorXd best_position;
    double best_value = 0.0;
    std::vector<double> history; // global best after initialisation and after each iteration
    std::size_t evaluations = 0;
};

using PhaseObjective = std::function<double(const Eigen::VectorXd &)>;

// Global-best PSO with wrapped positions and clamped velocities. `initial`
// positions (if any) replace the first random particles. The objective may
// return +inf for infeasible points; it must be safe to call concurrently
// when config.threads > 1. Ties in the global-best update go to the lowest
// particle index, so results do not depend on the thread count.
SwarmResult pso_minimize(int dims, const PhaseObjective &objective, const PsoConfig &config,
                         const std::vector<Eigen::VectorXd> &initial = {});

enum class Objective
{
    PebPlusReb,
    Peb,
    Reb,
};

struct ObjectiveWeights
{
    double peb = 1.0;
    double reb = 1.0;
};

double objective_value(const FisherResult &result, Objective objective, ObjectiveWeights weights = {});

struct PsoRun
{
    PhaseProfile best_phases;
    double best_objective = 0.0;
    std::vector<double> history; // non-increasing
    std::size_t evaluations = 0;
};

// Independent uniform phases on [0, 2 pi); element i of panel k depends only on (seed, k, i).
PhaseProfile random_phases(const Scenario &scenario, std::uint64_t seed);

// theta_i = arg(alpha_OUT,i) - arg(alpha_IN,i), so that
// |alpha_OUT^H Theta alpha_IN| = delta * L^2 on every panel.
PhaseProfile beam_aligned_phases(const Scenario &scenario, const GeometryOut &geometry);

// Jointly optimises every RIS phase to minimise the chosen bound. Singular
// FIM evaluations score +inf; throws AllSingular if nothing finite is found.
PsoRun pso_optimize(const Scenario &scenario, Objective objective, FimMode mode, const PsoConfig &config,
                    ObjectiveWeights weights = {});

} // namespace risloc

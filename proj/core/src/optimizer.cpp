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

#include "risloc/optimizer.hpp"

#include "risloc/errors.hpp"
#include "risloc/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace risloc
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// Signed shortest rotation from `from` to `to`, in [-pi, pi).
double angular_difference(double to, double from)
{
    double d = std::fmod(to - from + kPi, kTwoPi);
    if (d < 0.0)
        d += kTwoPi;
    return d - kPi;
}

double uniform(std::mt19937_64 &rng) { return unit_uniform(rng()); }

void evaluate_all(const std::vector<Eigen::VectorXd> &positions, std::vector<double> &values,
                  const PhaseObjective &objective, int threads)
{
    const int n = static_cast<int>(positions.size());
    auto run = [&](int begin, int end) {
        for (int i = begin; i < end; ++i)
        {
            const double v = objective(positions[i]);
            values[i] = std::isnan(v) ? kInf : v;
        }
    };
    const int workers = std::clamp(threads, 1, n);
    if (workers == 1)
    {
        run(0, n);
        return;
    }
    std::vector<std::jthread> pool;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
    {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin < end)
            pool.emplace_back(run, begin, end);
    }
}

} // namespace

void PsoConfig::check() const
{
    if (swarm_size < 2)
        throw ConfigError("pso: swarm_size must be >= 2");
    if (iterations < 1)
        throw ConfigError("pso: iterations must be >= 1");
    if (!(inertia >= 0.0 && inertia < 1.0))
        throw ConfigError("pso: inertia must lie in [0, 1)");
    if (!(cognitive > 0.0) || !(social > 0.0))
        throw ConfigError("pso: cognitive and social coefficients must be > 0");
    if (!(v_max > 0.0))
        throw ConfigError("pso: v_max must be > 0");
    if (threads < 1)
        throw ConfigError("pso: threads must be >= 1");
}

SwarmResult pso_minimize(int dims, const PhaseObjective &objective, const PsoConfig &config,
                         const std::vector<Eigen::VectorXd> &initial)
{
    config.check();
    const int swarm = config.swarm_size;
    if (static_cast<int>(initial.size()) > swarm)
        throw ConfigError("pso: more initial particles than swarm members");

    SwarmResult result;
    if (dims == 0)
    {
        // Nothing to move; the single point is the optimum.
        result.best_position = Eigen::VectorXd(0);
        result.best_value = objective(result.best_position);
        result.history.assign(static_cast<std::size_t>(config.iterations) + 1, result.best_value);
        result.evaluations = 1;
        return result;
    }

    std::mt19937_64 rng(config.seed);
    std::vector<Eigen::VectorXd> position(swarm, Eigen::VectorXd(dims));
    std::vector<Eigen::VectorXd> velocity(swarm, Eigen::VectorXd(dims));
    for (int p = 0; p < swarm; ++p)
    {
        for (int d = 0; d < dims; ++d)
        {
            position[p](d) = kTwoPi * uniform(rng);
            velocity[p](d) = config.v_max * (2.0 * uniform(rng) - 1.0);
        }
    }
    for (std::size_t p = 0; p < initial.size(); ++p)
    {
        if (initial[p].size() != dims)
            throw ConfigError("pso: initial particle has the wrong dimension");
        position[p] = initial[p].unaryExpr([](double t) { return wrap_phase(t); });
    }

    std::vector<double> value(swarm, kInf);
    evaluate_all(position, value, objective, config.threads);
    result.evaluations += static_cast<std::size_t>(swarm);

    std::vector<Eigen::VectorXd> personal = position;
    std::vector<double> personal_value = value;
    int leader = 0;
    for (int p = 1; p < swarm; ++p)
        if (personal_value[p] < personal_value[leader])
            leader = p;
    Eigen::VectorXd global = personal[leader];
    double global_value = personal_value[leader];
    result.history.push_back(global_value);

    for (int it = 0; it < config.iterations; ++it)
    {
        for (int p = 0; p < swarm; ++p)
        {
            auto &x = position[p];
            auto &v = velocity[p];
            for (int d = 0; d < dims; ++d)
            {
                const double r1 = uniform(rng);
                const double r2 = uniform(rng);
                double vel = config.inertia * v(d) +
                             config.cognitive * r1 * angular_difference(personal[p](d), x(d)) +
                             config.social * r2 * angular_difference(global(d), x(d));
                vel = std::clamp(vel, -config.v_max, config.v_max);
                v(d) = vel;
                x(d) = wrap_phase(x(d) + vel);
            }
        }

        evaluate_all(position, value, objective, config.threads);
        result.evaluations += static_cast<std::size_t>(swarm);

        for (int p = 0; p < swarm; ++p)
        {
            if (value[p] < personal_value[p])
            {
                personal_value[p] = value[p];
                personal[p] = position[p];
            }
        }
        // strict comparison in index order: lowest index wins ties
        for (int p = 0; p < swarm; ++p)
        {
            if (personal_value[p] < global_value)
            {
                global_value = personal_value[p];
                global = personal[p];
            }
        }
        result.history.push_back(global_value);
    }

    result.best_position = std::move(global);
    result.best_value = global_value;
    return result;
}

double objective_value(const FisherResult &result, Objective objective, ObjectiveWeights weights)
{
    switch (objective)
    {
    case Objective::Peb:
        return result.peb;
    case Objective::Reb:
        return result.reb;
    case Objective::PebPlusReb:
        break;
    }
    return weights.peb * result.peb + weights.reb * result.reb;
}

PhaseProfile random_phases(const Scenario &scenario, std::uint64_t seed)
{
    PhaseProfile out = PhaseProfile::zeros(scenario);
    for (std::size_t k = 0; k < out.theta.size(); ++k)
    {
        auto &t = out.theta[k];
        for (int i = 0; i < t.size(); ++i)
            t(i) = kTwoPi * unit_uniform(hash_key({seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i)}));
    }
    return out;
}

PhaseProfile beam_aligned_phases(const Scenario &scenario, const GeometryOut &geometry)
{
    const double lambda = scenario.radio.wavelength();
    const double d = scenario.radio.spacing();
    PhaseProfile out = PhaseProfile::zeros(scenario);
    for (int k = 0; k < scenario.ris_count(); ++k)
    {
        const int side = scenario.ris[k].side;
        const Eigen::VectorXcd in = steer_upa(geometry.phi_in_az(k), geometry.phi_in_el(k), side, d, lambda);
        const Eigen::VectorXcd outgoing = steer_upa(geometry.phi_out_az(k), geometry.phi_out_el(k), side, d, lambda);
        auto &t = out.theta[k];
        for (int i = 0; i < t.size(); ++i)
            t(i) = wrap_phase(std::arg(outgoing(i)) - std::arg(in(i)));
    }
    return out;
}

PsoRun pso_optimize(const Scenario &scenario, Objective objective, FimMode mode, const PsoConfig &config,
                    ObjectiveWeights weights)
{
    const BoundsEvaluator evaluator(scenario, mode);
    const double delta = scenario.ris_amplitude;
    const int dims = PhaseProfile::zeros(scenario).total_elements();

    const PhaseObjective fitness = [&](const Eigen::VectorXd &flat) {
        try
        {
            return objective_value(evaluator.evaluate(PhaseProfile::unflatten(scenario, flat, delta)), objective,
                                   weights);
        }
        catch (const SingularFim &)
        {
            return kInf;
        }
    };

    std::vector<Eigen::VectorXd> initial;
    if (config.seed_baselines)
    {
        initial.push_back(beam_aligned_phases(scenario, evaluator.geometry()).flatten());
        initial.push_back(random_phases(scenario, config.seed).flatten());
    }

    SwarmResult swarm = pso_minimize(dims, fitness, config, initial);
    if (!std::isfinite(swarm.best_value))
        throw AllSingular("every PSO evaluation produced a singular FIM");

    PsoRun run;
    run.best_phases = PhaseProfile::unflatten(scenario, swarm.best_position, delta);
    run.best_objective = swarm.best_value;
    run.history = std::move(swarm.history);
    run.evaluations = swarm.evaluations;
    return run;
}

} // namespace risloc

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
#include "risloc/optimizer.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace risloc;

namespace
{

Scenario bench_scenario(int side)
{
    Scenario s;
    s.bs = {0.0, 0.0, 40.0};
    s.mu = {90.0, 30.0, 0.0};
    for (const Eigen::Vector3d &pos : {Eigen::Vector3d(60, 45, 15), Eigen::Vector3d(50, 50, 5),
                                       Eigen::Vector3d(40, 20, 10)})
    {
        RisPanel panel;
        panel.position = pos;
        panel.side = side;
        panel.pathloss_exponent = 2.2;
        panel.shadowing_sigma_db = 7.0;
        s.ris.push_back(panel);
    }
    s.radio.carrier_hz = 4.9e9;
    s.radio.bandwidth_hz = 20e6;
    s.radio.subcarriers = 128;
    s.radio.tx_antennas = 32;
    s.radio.rx_antennas = 8;
    s.radio.tx_power_w = 1.0;
    s.radio.noise_psd_w_per_hz = std::pow(10.0, (-174.0 - 30.0) / 10.0);
    s.pathloss.los_exponent = 3.7;
    s.pathloss.los_shadowing_sigma_db = 4.0;
    return s;
}

void BM_Geometry(benchmark::State &state)
{
    const Scenario s = bench_scenario(16);
    for (auto _ : state)
        benchmark::DoNotOptimize(jacobian_T(s));
}
BENCHMARK(BM_Geometry);

void BM_MuDerivatives(benchmark::State &state)
{
    const Scenario s = bench_scenario(16);
    const GeometryOut g = compute_geometry(s);
    const SignalModel model(s, g, random_phases(s, 1), make_realization(s, g), default_precoder(s, g));
    int n = 1;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(model.derivatives(model.nominal(), n));
        n = n % s.radio.subcarriers + 1;
    }
}
BENCHMARK(BM_MuDerivatives);

// One objective evaluation as performed inside the optimizer.
void BM_BoundsEvaluation(benchmark::State &state)
{
    const Scenario s = bench_scenario(static_cast<int>(state.range(0)));
    const BoundsEvaluator evaluator(s, FimMode::PaperLiteral);
    const PhaseProfile phases = random_phases(s, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluator.evaluate(phases));
}
BENCHMARK(BM_BoundsEvaluation)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_PsoIteration(benchmark::State &state)
{
    const Scenario s = bench_scenario(16);
    PsoConfig config;
    config.swarm_size = 16;
    config.iterations = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(pso_optimize(s, Objective::PebPlusReb, FimMode::PaperLiteral, config));
}
BENCHMARK(BM_PsoIteration)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

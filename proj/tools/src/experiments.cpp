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

#include "risloc/cli/experiments.hpp"

#include "risloc/errors.hpp"
#include "risloc/geometry.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

namespace risloc::cli
{

std::string_view to_string(PhaseMode mode)
{
    switch (mode)
    {
    case PhaseMode::Random:
        return "random";
    case PhaseMode::Aligned:
        return "aligned";
    case PhaseMode::Pso:
        return "pso";
    }
    return "?";
}

std::string_view to_string(FimMode mode)
{
    return mode == FimMode::Efim ? "efim" : "paper";
}

PhaseMode parse_phase_mode(std::string_view text)
{
    if (text == "random")
        return PhaseMode::Random;
    if (text == "aligned")
        return PhaseMode::Aligned;
    if (text == "pso")
        return PhaseMode::Pso;
    throw ConfigError("unknown phase mode '" + std::string(text) + "' (random|aligned|pso)");
}

FimMode parse_fim_mode(std::string_view text)
{
    if (text == "paper")
        return FimMode::PaperLiteral;
    if (text == "efim")
        return FimMode::Efim;
    throw ConfigError("unknown fim mode '" + std::string(text) + "' (paper|efim)");
}

Objective parse_objective(std::string_view text)
{
    if (text == "sum")
        return Objective::PebPlusReb;
    if (text == "peb")
        return Objective::Peb;
    if (text == "reb")
        return Objective::Reb;
    throw ConfigError("unknown objective '" + std::string(text) + "' (sum|peb|reb)");
}

PhaseProfile make_phases(const Scenario &scenario, PhaseMode mode, FimMode fim_mode, std::uint64_t seed,
                         const RunOptions &options, std::optional<PsoRun> *run_out)
{
    switch (mode)
    {
    case PhaseMode::Random:
        return random_phases(scenario, seed);
    case PhaseMode::Aligned:
        return beam_aligned_phases(scenario, compute_geometry(scenario));
    case PhaseMode::Pso:
        break;
    }
    PsoConfig config = options.pso;
    config.seed = seed;
    PsoRun run = pso_optimize(scenario, options.objective, fim_mode, config, options.weights);
    PhaseProfile best = run.best_phases;
    if (run_out)
        *run_out = std::move(run);
    return best;
}

namespace
{

SweepResultRow evaluate_cell(const Scenario &scenario, std::string_view scenario_id, PhaseMode phase_mode,
                             FimMode fim_mode, std::uint64_t seed, const RunOptions &options)
{
    const auto start = std::chrono::steady_clock::now();
    const PhaseProfile phases = make_phases(scenario, phase_mode, fim_mode, seed, options);
    const FisherResult fr = evaluate_bounds(scenario, phases, fim_mode);
    const auto stop = std::chrono::steady_clock::now();

    SweepResultRow row;
    row.scenario_id = std::string(scenario_id);
    row.K_active = scenario.ris_count();
    row.L = scenario.ris.empty() ? 0 : scenario.ris.front().side;
    row.phase_mode = phase_mode;
    row.fim_mode = fim_mode;
    row.seed = seed;
    row.peb_m = fr.peb;
    row.reb_rad = fr.reb;
    row.objective = objective_value(fr, options.objective, options.weights);
    row.wall_time_s = options.record_wall_time ? std::chrono::duration<double>(stop - start).count() : 0.0;
    return row;
}

} // namespace

SweepResultRow cmd_bounds(const Scenario &scenario, std::string_view scenario_id, PhaseMode phase_mode,
                          FimMode fim_mode, std::uint64_t seed, const RunOptions &options)
{
    return evaluate_cell(scenario, scenario_id, phase_mode, fim_mode, seed, options);
}

std::vector<SweepResultRow> sweep_ris_count(const Scenario &scenario, std::string_view scenario_id,
                                            const std::vector<PhaseMode> &modes, FimMode fim_mode,
                                            const std::vector<std::uint64_t> &seeds, const RunOptions &options)
{
    if (scenario.ris_count() < 1)
        throw ConfigError("sweep-ris-count needs a scenario with at least one RIS");
    std::vector<SweepResultRow> rows;
    for (int active = 0; active <= scenario.ris_count(); ++active)
    {
        const Scenario subset = scenario.with_active_ris(active);
        for (PhaseMode mode : modes)
            for (std::uint64_t seed : seeds)
                rows.push_back(evaluate_cell(subset, scenario_id, mode, fim_mode, seed, options));
    }
    return rows;
}

std::vector<SweepResultRow> sweep_ris_size(const Scenario &scenario, std::string_view scenario_id,
                                           const std::vector<int> &sides, const std::vector<PhaseMode> &modes,
                                           FimMode fim_mode, const std::vector<std::uint64_t> &seeds,
                                           const RunOptions &options)
{
    if (sides.empty())
        throw ConfigError("sweep-ris-size needs at least one L value");
    for (int side : sides)
        if (side < 2)
            throw ConfigError("sweep-ris-size: every L must be >= 2, got " + std::to_string(side));
    std::vector<SweepResultRow> rows;
    for (int side : sides)
    {
        const Scenario resized = scenario.with_ris_side(side);
        for (PhaseMode mode : modes)
            for (std::uint64_t seed : seeds)
                rows.push_back(evaluate_cell(resized, scenario_id, mode, fim_mode, seed, options));
    }
    return rows;
}

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_csv(const std::vector<SweepResultRow> &rows)
{
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto &r : rows)
    {
        out << r.scenario_id << ',' << r.K_active << ',' << r.L << ',' << to_string(r.phase_mode) << ','
            << to_string(r.fim_mode) << ',' << r.seed << ',' << format_double(r.peb_m) << ','
            << format_double(r.reb_rad) << ',' << format_double(r.objective) << ',' << format_double(r.wall_time_s)
            << '\n';
    }
    return out.str();
}

} // namespace risloc::cli

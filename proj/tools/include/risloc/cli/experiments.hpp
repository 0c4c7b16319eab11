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

#include "risloc/fim.hpp"
#include "risloc/optimizer.hpp"
#include "risloc/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace risloc::cli
{

enum class PhaseMode
{
    Random,
    Aligned,
    Pso,
};

std::string_view to_string(PhaseMode mode);
std::string_view to_string(FimMode mode);
PhaseMode parse_phase_mode(std::string_view text);
FimMode parse_fim_mode(std::string_view text);
Objective parse_objective(std::string_view text);

struct SweepResultRow
{
    std::string scenario_id;
    int K_active = 0;
    int L = 0; // side of the active panels, 0 when no RIS is active
    PhaseMode phase_mode = PhaseMode::Aligned;
    FimMode fim_mode = FimMode::PaperLiteral;
    std::uint64_t seed = 0;
    double peb_m = 0.0;
    double reb_rad = 0.0;
    double objective = 0.0;
    double wall_time_s = 0.0;
};

struct RunOptions
{
    PsoConfig pso;
    Objective objective = Objective::PebPlusReb;
    ObjectiveWeights weights;
    // Off by default so identical inputs give byte-identical CSV; wall_time_s is then 0.
    bool record_wall_time = false;
};

// Phase profile for one cell. Pso runs the optimizer (options.pso with this
// seed) against the bound computed in `fim_mode`; the run is copied to run_out.
PhaseProfile make_phases(const Scenario &scenario, PhaseMode mode, FimMode fim_mode, std::uint64_t seed,
                         const RunOptions &options, std::optional<PsoRun> *run_out = nullptr);

SweepResultRow cmd_bounds(const Scenario &scenario, std::string_view scenario_id, PhaseMode phase_mode,
                          FimMode fim_mode, std::uint64_t seed, const RunOptions &options);

// Nested subsets {LoS}, {RIS 1}, ..., {RIS 1..K}; rows ordered by (K_active, mode, seed).
std::vector<SweepResultRow> sweep_ris_count(const Scenario &scenario, std::string_view scenario_id,
                                            const std::vector<PhaseMode> &modes, FimMode fim_mode,
                                            const std::vector<std::uint64_t> &seeds, const RunOptions &options);

// Every panel resized to each L in turn; rows ordered by (L, mode, seed).
std::vector<SweepResultRow> sweep_ris_size(const Scenario &scenario, std::string_view scenario_id,
                                           const std::vector<int> &sides, const std::vector<PhaseMode> &modes,
                                           FimMode fim_mode, const std::vector<std::uint64_t> &seeds,
                                           const RunOptions &options);

inline constexpr std::string_view kCsvHeader =
    "scenario_id,K_active,L,phase_mode,fim_mode,seed,peb_m,reb_rad,objective,wall_time_s";

// Shortest decimal that parses back to the same double.
std::string format_double(double value);

std::string format_csv(const std::vector<SweepResultRow> &rows);

} // namespace risloc::cli

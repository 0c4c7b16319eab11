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

// risloc command-line front end: bounds, optimize, sweep-ris-count, sweep-ris-size.

#include "risloc/cli/experiments.hpp"
#include "risloc/cli/scenario_io.hpp"
#include "risloc/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace
{

using namespace risloc;
using namespace risloc::cli;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitSingular = 3;
constexpr int kExitIo = 4;

int exit_code(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::SingularFim:
    case ErrorKind::AllSingular:
        return kExitSingular;
    case ErrorKind::Io:
        return kExitIo;
    default:
        return kExitInvalid;
    }
}

struct CommonArgs
{
    std::string scenario;
    std::string phases = "aligned";
    std::string fim = "paper";
    std::string objective = "sum";
    std::uint64_t seed = 1;
    std::string out;
    int swarm = 32;
    int iters = 120;
    bool full_pso = false;
    int threads = 1;
    bool wall_time = false;
};

void add_common(CLI::App *cmd, CommonArgs &args)
{
    cmd->add_option("--scenario", args.scenario, "Scenario JSON file")->required();
    cmd->add_option("--fim", args.fim, "FIM mode: paper | efim")->check(CLI::IsMember({"paper", "efim"}));
    cmd->add_option("--objective", args.objective, "PSO objective: sum | peb | reb")
        ->check(CLI::IsMember({"sum", "peb", "reb"}));
    cmd->add_option("--seed", args.seed, "Seed for random phases and PSO");
    cmd->add_option("--out", args.out, "Output file (default: stdout)");
    cmd->add_option("--pso-swarm", args.swarm, "PSO swarm size")->check(CLI::PositiveNumber);
    cmd->add_option("--pso-iters", args.iters, "PSO iterations")->check(CLI::PositiveNumber);
    cmd->add_flag("--full-pso", args.full_pso, "Use the full-size PSO settings (swarm 64, 300 iterations)");
    cmd->add_option("--threads", args.threads, "Worker threads for PSO fitness evaluation")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--wall-time", args.wall_time, "Record measured wall time (makes CSV output run-dependent)");
}

RunOptions run_options(const CommonArgs &args)
{
    RunOptions opt;
    opt.pso.swarm_size = args.full_pso ? 64 : args.swarm;
    opt.pso.iterations = args.full_pso ? 300 : args.iters;
    opt.pso.seed = args.seed;
    opt.pso.threads = args.threads;
    opt.objective = parse_objective(args.objective);
    opt.record_wall_time = args.wall_time;
    return opt;
}

LoadedScenario load(const CommonArgs &args)
{
    LoadedScenario loaded = load_scenario(args.scenario);
    for (const auto &w : loaded.warnings)
        std::cerr << "warning: " << w << '\n';
    return loaded;
}

void emit(const std::string &path, const std::string &content)
{
    if (path.empty())
    {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open output file " + path);
    out << content;
    out.close();
    if (!out)
        throw IoError("failed writing output file " + path);
}

void summarize(const std::vector<SweepResultRow> &rows)
{
    for (const auto &r : rows)
    {
        std::cerr << r.scenario_id << "  K=" << r.K_active << " L=" << r.L << " phases=" << to_string(r.phase_mode)
                  << " fim=" << to_string(r.fim_mode) << " seed=" << r.seed << "  PEB=" << format_double(r.peb_m)
                  << " m  REB=" << format_double(r.reb_rad) << " rad  objective=" << format_double(r.objective)
                  << '\n';
    }
}

std::vector<PhaseMode> parse_modes(const std::vector<std::string> &names)
{
    std::vector<PhaseMode> modes;
    for (const auto &n : names)
        modes.push_back(parse_phase_mode(n));
    return modes;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Position/rotation error bounds and RIS phase optimization for multi-RIS mmWave positioning"};
    app.require_subcommand(1);

    CommonArgs bounds_args, optimize_args, count_args, size_args;
    std::vector<std::string> count_modes{"random", "aligned", "pso"};
    std::vector<std::string> size_modes{"pso"};
    std::vector<std::uint64_t> count_seeds, size_seeds;
    std::vector<int> sides{4, 8, 12, 16};

    auto *bounds = app.add_subcommand("bounds", "Evaluate PEB/REB for one phase configuration");
    add_common(bounds, bounds_args);
    bounds->add_option("--phases", bounds_args.phases, "Phase mode: random | aligned | pso")
        ->check(CLI::IsMember({"random", "aligned", "pso"}));

    auto *optimize = app.add_subcommand("optimize", "Run PSO and write the optimized phases as JSON");
    add_common(optimize, optimize_args);

    auto *count = app.add_subcommand("sweep-ris-count", "PEB/REB versus the number of active RIS panels");
    add_common(count, count_args);
    count->add_option("--phases", count_modes, "Phase modes to evaluate")->delimiter(',');
    count->add_option("--seeds", count_seeds, "Seeds (default: --seed)")->delimiter(',');

    auto *size = app.add_subcommand("sweep-ris-size", "PEB/REB versus the RIS side length L");
    add_common(size, size_args);
    size->add_option("--phases", size_modes, "Phase modes to evaluate")->delimiter(',');
    size->add_option("--seeds", size_seeds, "Seeds (default: --seed)")->delimiter(',');
    size->add_option("--L", sides, "Side lengths to sweep")->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try
    {
        if (*bounds)
        {
            const auto loaded = load(bounds_args);
            const auto row = cmd_bounds(loaded.scenario, loaded.id, parse_phase_mode(bounds_args.phases),
                                        parse_fim_mode(bounds_args.fim), bounds_args.seed, run_options(bounds_args));
            summarize({row});
            emit(bounds_args.out, format_csv({row}));
        }
        else if (*optimize)
        {
            const auto loaded = load(optimize_args);
            const RunOptions opt = run_options(optimize_args);
            const FimMode mode = parse_fim_mode(optimize_args.fim);
            const PsoRun run = pso_optimize(loaded.scenario, opt.objective, mode, opt.pso, opt.weights);
            const FisherResult fr = evaluate_bounds(loaded.scenario, run.best_phases, mode);

            nlohmann::json doc;
            doc["scenario_id"] = loaded.id;
            doc["fim_mode"] = std::string(to_string(mode));
            doc["objective_kind"] = optimize_args.objective;
            doc["seed"] = optimize_args.seed;
            doc["swarm_size"] = opt.pso.swarm_size;
            doc["iterations"] = opt.pso.iterations;
            doc["evaluations"] = run.evaluations;
            doc["best_objective"] = run.best_objective;
            doc["peb_m"] = fr.peb;
            doc["reb_rad"] = fr.reb;
            doc["history"] = run.history;
            doc["delta"] = run.best_phases.delta;
            doc["phases_rad"] = nlohmann::json::array();
            for (const auto &t : run.best_phases.theta)
                doc["phases_rad"].push_back(std::vector<double>(t.data(), t.data() + t.size()));

            std::cerr << loaded.id << "  PSO objective " << format_double(run.best_objective) << "  PEB "
                      << format_double(fr.peb) << " m  REB " << format_double(fr.reb) << " rad  ("
                      << run.evaluations << " evaluations)\n";
            emit(optimize_args.out, doc.dump(2) + "\n");
        }
        else if (*count)
        {
            const auto loaded = load(count_args);
            if (count_seeds.empty())
                count_seeds.push_back(count_args.seed);
            const auto rows = sweep_ris_count(loaded.scenario, loaded.id, parse_modes(count_modes),
                                              parse_fim_mode(count_args.fim), count_seeds, run_options(count_args));
            summarize(rows);
            emit(count_args.out, format_csv(rows));
        }
        else if (*size)
        {
            const auto loaded = load(size_args);
            if (size_seeds.empty())
                size_seeds.push_back(size_args.seed);
            const auto rows = sweep_ris_size(loaded.scenario, loaded.id, sides, parse_modes(size_modes),
                                             parse_fim_mode(size_args.fim), size_seeds, run_options(size_args));
            summarize(rows);
            emit(size_args.out, format_csv(rows));
        }
    }
    catch (const risloc::Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}

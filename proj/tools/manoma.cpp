// SPDX-License-Identifier: Apache-2.0
//
// manoma - movable-antenna NOMA short-packet downlink simulation library
// Copyright (C) 2026 manoma contributors
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
//
// Command-line front end: one-shot solves, the three sweep experiments and
// the invariant selftest. All randomness flows from --seed; sweeps write
// CSV (and optionally SVG) files that are byte-identical for a given seed
// whatever the worker count.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manoma/experiments.hpp"
#include "manoma/report.hpp"
#include "manoma/rng.hpp"
#include "manoma/selftest.hpp"

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

struct SweepOptions
{
    manoma::ExperimentConfig cfg;
    std::string schemes_csv;
    std::string grid_csv;
    std::string out_dir = ".";
    bool plot = false;
};

std::vector<double> parse_double_list(const std::string &csv)
{
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty())
            continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size())
            throw CLI::ValidationError("grid", "not a number: '" + item + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw CLI::ValidationError("grid", "empty list");
    return values;
}

std::vector<manoma::Scheme> parse_scheme_list(const std::string &csv)
{
    std::vector<manoma::Scheme> schemes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty())
            continue;
        const auto s = manoma::scheme_from_string(item);
        if (!s)
            throw CLI::ValidationError("schemes", "unknown scheme '" + item +
                                                      "' (use ma_noma, fpa_noma, ma_oma, fpa_oma)");
        schemes.push_back(*s);
    }
    if (schemes.empty())
        throw CLI::ValidationError("schemes", "empty list");
    return schemes;
}

// Flat key=value config file with '#' comments. Returns "--key=value"
// tokens; CLI11 then rejects any key that is not a real option of the
// subcommand, naming it.
std::vector<std::string> config_file_args(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw CLI::FileError::Missing(path);
    std::vector<std::string> args;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config",
                                       path + ":" + std::to_string(line_no) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw CLI::ValidationError("config",
                                       path + ":" + std::to_string(line_no) + ": empty key");
        std::replace(key.begin(), key.end(), '_', '-');
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

void add_physical_options(CLI::App *cmd, manoma::PhysicalParams &phys)
{
    cmd->add_option("--d1", phys.d1, "Near-user distance, m");
    cmd->add_option("--d2", phys.d2, "Far-user distance, m");
    cmd->add_option("--alpha", phys.path_loss_exponent, "Path-loss exponent");
    cmd->add_option("--paths", phys.num_paths, "Receive paths per user")->check(CLI::PositiveNumber);
    cmd->add_option("--wavelength", phys.wavelength, "Carrier wavelength (length unit)");
    cmd->add_option("--region-side", phys.region_side, "Movable-region side length A");
    cmd->add_option("--pmax-db", phys.p_max_db, "Power budget over reference noise, dB");
    cmd->add_option("--noise1", phys.noise1, "Near-user noise power, linear");
    cmd->add_option("--noise2", phys.noise2, "Far-user noise power, linear");
    cmd->add_option("--blocklength", phys.blocklength, "Channel uses per block")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--t0", phys.t_min, "Far-user throughput floor, bits/channel use");
}

void add_solver_options(CLI::App *cmd, manoma::ExperimentConfig &cfg)
{
    cmd->add_option("--sca-iters", cfg.sca.max_iterations, "Placement iteration cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sca-tol", cfg.sca.convergence_tol, "Placement relative improvement tolerance");
    cmd->add_option("--sca-starts", cfg.sca.extra_starts,
                    "Extra random placement starts (0 = center start only)");
    cmd->add_option("--prescan", cfg.search.prescan_points, "Power prescan points")
        ->check(CLI::PositiveNumber);
}

void add_sweep_options(CLI::App *cmd, SweepOptions &opt)
{
    cmd->add_option("--trials", opt.cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.cfg.master_seed, "Master seed; all randomness flows from it");
    cmd->add_option("--schemes", opt.schemes_csv, "Comma-separated scheme list");
    cmd->add_option("--grid", opt.grid_csv, "Comma-separated sweep grid values");
    cmd->add_option("--workers", opt.cfg.workers, "Worker thread cap (0 = hardware)");
    cmd->add_option("-o,--out", opt.out_dir, "Output directory");
    cmd->add_flag("--plot", opt.plot, "Also write an SVG chart next to the CSV");
    add_physical_options(cmd, opt.cfg.phys);
    add_solver_options(cmd, opt.cfg);
}

void finalize_sweep_options(SweepOptions &opt)
{
    if (!opt.schemes_csv.empty())
        opt.cfg.schemes = parse_scheme_list(opt.schemes_csv);
    if (!opt.grid_csv.empty())
        opt.cfg.grid = parse_double_list(opt.grid_csv);
    std::sort(opt.cfg.grid.begin(), opt.cfg.grid.end());
}

int run_sweep_command(const SweepOptions &opt)
{
    const auto rows = manoma::run_sweep(opt.cfg);
    const std::string csv = manoma::to_csv(rows);

    namespace fs = std::filesystem;
    fs::create_directories(opt.out_dir);
    const std::string stem = std::string("sweep_") + manoma::sweep_name(opt.cfg.sweep);
    const fs::path csv_path = fs::path(opt.out_dir) / (stem + ".csv");
    std::ofstream(csv_path, std::ios::binary) << csv;
    std::cout << "wrote " << csv_path.string() << "\n";

    if (opt.plot)
    {
        std::string x_label;
        switch (opt.cfg.sweep)
        {
        case manoma::SweepKind::p2:
            x_label = "far-user power fraction P2/Pmax";
            break;
        case manoma::SweepKind::n:
            x_label = "blocklength N (channel uses)";
            break;
        case manoma::SweepKind::t0:
            x_label = "far-user floor T0 (bits/channel use)";
            break;
        }
        const fs::path svg_path = fs::path(opt.out_dir) / (stem + ".svg");
        std::ofstream(svg_path, std::ios::binary)
            << manoma::render_svg(rows, "mean T1 vs " + x_label, x_label);
        std::cout << "wrote " << svg_path.string() << "\n";
    }
    return kExitOk;
}

int run_solve_command(const manoma::ExperimentConfig &cfg, const std::string &scheme_name_arg,
                      double p2_fraction, bool has_p2_fraction, std::int64_t trial_index)
{
    const auto scheme = manoma::scheme_from_string(scheme_name_arg);
    if (!scheme)
        throw CLI::ValidationError("scheme", "unknown scheme '" + scheme_name_arg + "'");

    manoma::ExperimentConfig run_cfg = cfg;
    if (has_p2_fraction)
    {
        if (manoma::scheme_is_slotted(*scheme))
            throw CLI::ValidationError("p2-fraction", "not applicable to the slotted baseline");
        run_cfg.fixed_p2_fraction = p2_fraction;
    }
    run_cfg.schemes = {*scheme};

    const manoma::TrialContext ctx = manoma::prepare_trial(run_cfg, trial_index);
    const double p_max = run_cfg.phys.p_max();

    std::cout << "scheme            " << manoma::scheme_name(*scheme) << "\n"
              << "seed/trial        " << run_cfg.master_seed << "/" << trial_index << "\n"
              << "P_max             " << manoma::format_number(p_max) << " ("
              << manoma::format_number(run_cfg.phys.p_max_db) << " dB over reference noise)\n"
              << "blocklength N     " << run_cfg.phys.blocklength << "\n"
              << "floor T0          " << manoma::format_number(run_cfg.phys.t_min) << "\n"
              << "gain u1 (center)  " << manoma::format_number(ctx.gain1_fixed) << "\n"
              << "gain u2 (center)  " << manoma::format_number(ctx.gain2_fixed) << "\n";
    if (manoma::scheme_is_movable(*scheme))
    {
        const auto &p1 = ctx.placement1;
        const auto &p2 = ctx.placement2;
        std::cout << "placement u1      (" << manoma::format_number(p1.position.x) << ", "
                  << manoma::format_number(p1.position.y) << ") gain "
                  << manoma::format_number(p1.gain) << " after " << p1.iterations
                  << " iterations" << (p1.converged ? "" : " (cap hit)") << "\n"
                  << "placement u2      (" << manoma::format_number(p2.position.x) << ", "
                  << manoma::format_number(p2.position.y) << ") gain "
                  << manoma::format_number(p2.gain) << " after " << p2.iterations
                  << " iterations" << (p2.converged ? "" : " (cap hit)") << "\n";
    }

    const manoma::SchemeOutcome outcome = manoma::evaluate_scheme(
        *scheme, ctx, run_cfg.phys, run_cfg.search, run_cfg.fixed_p2_fraction);
    if (!outcome.feasible)
    {
        std::cout << "INFEASIBLE: the far-user floor is unreachable for this draw\n";
        return kExitInfeasible;
    }

    // Re-run the allocator directly for the full solution record.
    manoma::AllocProblem pb;
    pb.gain1 = manoma::scheme_is_movable(*scheme) ? ctx.placement1.gain : ctx.gain1_fixed;
    pb.gain2 = manoma::scheme_is_movable(*scheme) ? ctx.placement2.gain : ctx.gain2_fixed;
    pb.noise1 = run_cfg.phys.noise1;
    pb.noise2 = run_cfg.phys.noise2;
    pb.p_max = p_max;
    pb.blocklength = run_cfg.phys.blocklength;
    pb.t_min = run_cfg.phys.t_min;
    manoma::AllocSolution sol;
    if (manoma::scheme_is_slotted(*scheme))
        sol = manoma::solve_oma(pb, run_cfg.search);
    else if (run_cfg.fixed_p2_fraction)
        sol = manoma::solve_noma_fixed_p2(pb, *run_cfg.fixed_p2_fraction * p_max, run_cfg.search);
    else
        sol = manoma::solve_noma(pb, run_cfg.search);

    std::cout << "P1                " << manoma::format_number(sol.allocation.p1) << "\n"
              << "P2                " << manoma::format_number(sol.allocation.p2) << "\n"
              << "P2 lower bound    " << manoma::format_number(sol.p2_lower) << "\n"
              << "R1                " << manoma::format_number(sol.allocation.r1) << "\n"
              << "R2                " << manoma::format_number(sol.allocation.r2) << "\n"
              << "T1                " << manoma::format_number(sol.t1) << "\n"
              << "T2                " << manoma::format_number(sol.t2) << "\n";
    if (manoma::scheme_is_slotted(*scheme))
        std::cout << "slots N1/N2       " << sol.diagnostics.oma_slot_u1 << "/"
                  << sol.diagnostics.oma_slot_u2 << "\n";
    else
        std::cout << "objective evals   " << sol.diagnostics.objective_evaluations << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Movable-antenna NOMA short-packet downlink: placement and "
                 "allocation solvers with Monte Carlo sweep experiments"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // solve
    manoma::ExperimentConfig solve_cfg;
    std::string solve_scheme = "ma_noma";
    double solve_p2_fraction = 0.0;
    std::int64_t solve_trial = 0;
    CLI::App *solve = app.add_subcommand("solve", "Solve one sampled instance end to end");
    solve->add_option("--seed", solve_cfg.master_seed, "Master seed");
    solve->add_option("--trial", solve_trial, "Trial index within the seed's stream");
    solve->add_option("--scheme", solve_scheme, "ma_noma, fpa_noma, ma_oma or fpa_oma");
    CLI::Option *p2_opt = solve->add_option("--p2-fraction", solve_p2_fraction,
                                            "Pin P2 to this fraction of the budget")
                              ->check(CLI::Range(0.0, 1.0));
    add_physical_options(solve, solve_cfg.phys);
    add_solver_options(solve, solve_cfg);

    // sweeps
    SweepOptions p2_opts, n_opts, t0_opts;
    p2_opts.cfg = manoma::make_sweep_config(manoma::SweepKind::p2);
    n_opts.cfg = manoma::make_sweep_config(manoma::SweepKind::n);
    t0_opts.cfg = manoma::make_sweep_config(manoma::SweepKind::t0);
    CLI::App *sweep_p2 = app.add_subcommand(
        "sweep-p2", "Mean T1 vs the far-user power fraction (rates optimized per point)");
    CLI::App *sweep_n = app.add_subcommand("sweep-n", "Mean T1 vs blocklength");
    CLI::App *sweep_t0 = app.add_subcommand("sweep-t0", "Mean T1 vs the far-user floor");
    add_sweep_options(sweep_p2, p2_opts);
    add_sweep_options(sweep_n, n_opts);
    add_sweep_options(sweep_t0, t0_opts);

    // selftest
    std::uint64_t selftest_seed = 20260809;
    CLI::App *selftest = app.add_subcommand("selftest", "Run the library invariant suites");
    selftest->add_option("--seed", selftest_seed, "Seed for the randomized suites");

    // Pull "--config FILE" out of argv, splice the file's key=value pairs in
    // right after the subcommand so explicit flags still win (TakeLast).
    std::vector<std::string> args(argv + 1, argv + argc);
    try
    {
        std::string config_path;
        for (std::size_t i = 0; i < args.size();)
        {
            if (args[i] == "--config")
            {
                if (i + 1 >= args.size())
                    throw CLI::ValidationError("config", "--config needs a file path");
                config_path = args[i + 1];
                args.erase(args.begin() + i, args.begin() + i + 2);
            }
            else if (args[i].rfind("--config=", 0) == 0)
            {
                config_path = args[i].substr(9);
                args.erase(args.begin() + i);
            }
            else
                ++i;
        }
        if (!config_path.empty())
        {
            if (args.empty())
                throw CLI::ValidationError("config", "--config requires a subcommand");
            const auto extra = config_file_args(config_path);
            args.insert(args.begin() + 1, extra.begin(), extra.end());
        }

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        if (solve->parsed())
            return run_solve_command(solve_cfg, solve_scheme, solve_p2_fraction,
                                     p2_opt->count() > 0, solve_trial);
        if (sweep_p2->parsed())
        {
            finalize_sweep_options(p2_opts);
            return run_sweep_command(p2_opts);
        }
        if (sweep_n->parsed())
        {
            finalize_sweep_options(n_opts);
            return run_sweep_command(n_opts);
        }
        if (sweep_t0->parsed())
        {
            finalize_sweep_options(t0_opts);
            return run_sweep_command(t0_opts);
        }
        if (selftest->parsed())
            return manoma::run_selftest(selftest_seed, std::cout) == 0 ? kExitOk : kExitInfeasible;
    }
    catch (const manoma::InfeasibleError &e)
    {
        std::cerr << "infeasible: " << e.what()
                  << " (max achievable " << manoma::format_number(e.max_achievable()) << ")\n";
        return kExitInfeasible;
    }
    catch (const CLI::ValidationError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    return kExitUsage;
}

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

#include "manoma/experiments.hpp"
#include "manoma/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace manoma
{

const char *scheme_name(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::ma_noma:
        return "ma_noma";
    case Scheme::fpa_noma:
        return "fpa_noma";
    case Scheme::ma_oma:
        return "ma_oma";
    case Scheme::fpa_oma:
        return "fpa_oma";
    }
    return "unknown";
}

std::optional<Scheme> scheme_from_string(const std::string &name)
{
    for (Scheme s : {Scheme::ma_noma, Scheme::fpa_noma, Scheme::ma_oma, Scheme::fpa_oma})
        if (name == scheme_name(s))
            return s;
    return std::nullopt;
}

bool scheme_is_slotted(Scheme scheme)
{
    return scheme == Scheme::ma_oma || scheme == Scheme::fpa_oma;
}

bool scheme_is_movable(Scheme scheme)
{
    return scheme == Scheme::ma_noma || scheme == Scheme::ma_oma;
}

const char *sweep_name(SweepKind kind)
{
    switch (kind)
    {
    case SweepKind::p2:
        return "p2";
    case SweepKind::n:
        return "n";
    case SweepKind::t0:
        return "t0";
    }
    return "unknown";
}

double PhysicalParams::p_max() const
{
    return std::pow(10.0, p_max_db / 10.0);
}

ChannelPairParams PhysicalParams::channel_params() const
{
    ChannelPairParams cp;
    cp.d1 = d1;
    cp.d2 = d2;
    cp.path_loss_exponent = path_loss_exponent;
    cp.num_paths = num_paths;
    cp.wavelength = wavelength;
    cp.region_side = region_side;
    cp.noise1 = noise1;
    cp.noise2 = noise2;
    return cp;
}

std::vector<double> default_grid(SweepKind kind)
{
    switch (kind)
    {
    case SweepKind::p2:
        return {0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};
    case SweepKind::n:
        return {50, 100, 150, 200, 250, 300};
    case SweepKind::t0:
        return {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    }
    return {};
}

ExperimentConfig make_sweep_config(SweepKind kind)
{
    ExperimentConfig cfg;
    cfg.sweep = kind;
    cfg.grid = default_grid(kind);
    switch (kind)
    {
    case SweepKind::p2:
        cfg.phys.blocklength = 100;
        cfg.phys.t_min = 1.0;
        cfg.schemes = {Scheme::ma_noma, Scheme::fpa_noma};
        break;
    case SweepKind::n:
        cfg.phys.t_min = 2.0;
        break;
    case SweepKind::t0:
        cfg.phys.blocklength = 200;
        break;
    }
    return cfg;
}

namespace
{
// Substream tags so the placement restart draws never collide with the
// channel draw of the same trial.
constexpr std::uint64_t kStartStream1 = 0x706c616365317575ULL;
constexpr std::uint64_t kStartStream2 = 0x706c616365327575ULL;

void apply_sweep_value(SweepKind kind, double value, PhysicalParams &phys,
                       std::optional<double> &fixed_p2_fraction)
{
    switch (kind)
    {
    case SweepKind::p2:
        if (!(value > 0.0) || !(value < 1.0))
            throw std::invalid_argument("p2 grid values are fractions of the budget in (0, 1)");
        fixed_p2_fraction = value;
        break;
    case SweepKind::n:
    {
        const int n = static_cast<int>(std::lround(value));
        if (n < 2 || std::abs(value - n) > 1e-9)
            throw std::invalid_argument("blocklength grid values must be integers >= 2");
        phys.blocklength = n;
        break;
    }
    case SweepKind::t0:
        if (!(value >= 0.0))
            throw std::invalid_argument("floor grid values must be nonnegative");
        phys.t_min = value;
        break;
    }
}

void validate_config(const ExperimentConfig &cfg)
{
    if (cfg.trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (cfg.schemes.empty())
        throw std::invalid_argument("at least one scheme is required");
    if (cfg.fixed_p2_fraction)
        for (Scheme s : cfg.schemes)
            if (scheme_is_slotted(s))
                throw std::invalid_argument(
                    "a fixed p2 has no meaning for the slotted baseline schemes");
}
} // namespace

TrialContext prepare_trial(const ExperimentConfig &config, std::int64_t trial_index)
{
    const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(trial_index));
    auto [u1, u2] = sample_channel_pair(seed, config.phys.channel_params());

    TrialContext ctx;
    ctx.gain1_fixed = gain(u1, AntennaPosition::origin());
    ctx.gain2_fixed = gain(u2, AntennaPosition::origin());

    ScaConfig sca1 = config.sca;
    ScaConfig sca2 = config.sca;
    sca1.start_seed = derive_seed(seed, kStartStream1);
    sca2.start_seed = derive_seed(seed, kStartStream2);
    ctx.placement1 = optimize_position(u1, sca1);
    ctx.placement2 = optimize_position(u2, sca2);

    ctx.user1 = std::move(u1);
    ctx.user2 = std::move(u2);
    return ctx;
}

SchemeOutcome evaluate_scheme(Scheme scheme, const TrialContext &trial,
                              const PhysicalParams &phys, const SearchConfig &search,
                              std::optional<double> fixed_p2_fraction)
{
    AllocProblem pb;
    pb.gain1 = scheme_is_movable(scheme) ? trial.placement1.gain : trial.gain1_fixed;
    pb.gain2 = scheme_is_movable(scheme) ? trial.placement2.gain : trial.gain2_fixed;
    pb.noise1 = phys.noise1;
    pb.noise2 = phys.noise2;
    pb.p_max = phys.p_max();
    pb.blocklength = phys.blocklength;
    pb.t_min = phys.t_min;

    try
    {
        AllocSolution sol;
        if (scheme_is_slotted(scheme))
            sol = solve_oma(pb, search);
        else if (fixed_p2_fraction)
            sol = solve_noma_fixed_p2(pb, *fixed_p2_fraction * pb.p_max, search);
        else
            sol = solve_noma(pb, search);
        return {sol.t1, sol.t2, true};
    }
    catch (const InfeasibleError &)
    {
        return {0.0, 0.0, false};
    }
}

std::vector<SchemeOutcome> run_trial(const ExperimentConfig &config, std::int64_t trial_index)
{
    validate_config(config);
    const TrialContext ctx = prepare_trial(config, trial_index);
    std::vector<SchemeOutcome> out;
    out.reserve(config.schemes.size());
    for (Scheme s : config.schemes)
        out.push_back(evaluate_scheme(s, ctx, config.phys, config.search, config.fixed_p2_fraction));
    return out;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig &config)
{
    validate_config(config);
    std::vector<double> grid = config.grid.empty() ? default_grid(config.sweep) : config.grid;
    if (grid.empty())
        throw std::invalid_argument("sweep grid must be non-empty");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("sweep grid must be sorted ascending");

    // Pre-resolve the per-grid operating points (validates the grid early).
    struct GridPoint
    {
        PhysicalParams phys;
        std::optional<double> fixed_p2;
    };
    std::vector<GridPoint> points;
    points.reserve(grid.size());
    for (double value : grid)
    {
        GridPoint gp{config.phys, config.fixed_p2_fraction};
        apply_sweep_value(config.sweep, value, gp.phys, gp.fixed_p2);
        points.push_back(gp);
    }

    const std::size_t n_grid = grid.size();
    const std::size_t n_schemes = config.schemes.size();
    std::vector<SchemeOutcome> cells(static_cast<std::size_t>(config.trials) * n_grid * n_schemes);
    auto cell = [&](std::size_t trial, std::size_t g, std::size_t s) -> SchemeOutcome & {
        return cells[(trial * n_grid + g) * n_schemes + s];
    };

    const int workers = config.workers > 0
                            ? config.workers
                            : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&]() {
        for (;;)
        {
            const std::int64_t trial = next.fetch_add(1);
            if (trial >= config.trials)
                return;
            try
            {
                const TrialContext ctx = prepare_trial(config, trial);
                for (std::size_t g = 0; g < n_grid; ++g)
                    for (std::size_t s = 0; s < n_schemes; ++s)
                        cell(trial, g, s) = evaluate_scheme(config.schemes[s], ctx,
                                                            points[g].phys, config.search,
                                                            points[g].fixed_p2);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(config.trials);
                return;
            }
        }
    };

    if (workers == 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    // Reduce in fixed trial order so the output is worker-count independent.
    std::vector<SweepRow> rows;
    rows.reserve(n_grid * n_schemes);
    for (std::size_t g = 0; g < n_grid; ++g)
        for (std::size_t s = 0; s < n_schemes; ++s)
        {
            SweepRow row;
            row.sweep_value = grid[g];
            row.scheme = config.schemes[s];
            row.trials = config.trials;

            std::int64_t feasible = 0;
            double sum_t1 = 0.0;
            double sum_t2 = 0.0;
            for (std::int64_t trial = 0; trial < config.trials; ++trial)
            {
                const SchemeOutcome &o = cell(trial, g, s);
                if (!o.feasible)
                    continue;
                ++feasible;
                sum_t1 += o.t1;
                sum_t2 += o.t2;
            }
            row.feasible_rate = static_cast<double>(feasible) / config.trials;
            if (feasible == 0)
            {
                row.mean_t1 = std::numeric_limits<double>::quiet_NaN();
                row.stderr_t1 = std::numeric_limits<double>::quiet_NaN();
                row.mean_t2 = std::numeric_limits<double>::quiet_NaN();
            }
            else
            {
                row.mean_t1 = sum_t1 / feasible;
                row.mean_t2 = sum_t2 / feasible;
                double ss = 0.0;
                for (std::int64_t trial = 0; trial < config.trials; ++trial)
                {
                    const SchemeOutcome &o = cell(trial, g, s);
                    if (!o.feasible)
                        continue;
                    const double dev = o.t1 - row.mean_t1;
                    ss += dev * dev;
                }
                row.stderr_t1 = feasible > 1
                                    ? std::sqrt(ss / (feasible - 1) / feasible)
                                    : 0.0;
            }
            rows.push_back(row);
        }
    return rows;
}

} // namespace manoma

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

#include <catch2/catch_amalgamated.hpp>

#include "manoma/experiments.hpp"
#include "manoma/report.hpp"
#include "manoma/rng.hpp"

#include <cmath>

using namespace manoma;
using Catch::Approx;

namespace
{
ExperimentConfig small_config()
{
    ExperimentConfig cfg = make_sweep_config(SweepKind::t0);
    cfg.trials = 5;
    cfg.master_seed = 99;
    cfg.grid = {0.5, 1.5};
    cfg.workers = 1;
    return cfg;
}
} // namespace

TEST_CASE("trial outcomes are a pure function of seed and index", "[experiments]")
{
    const ExperimentConfig cfg = small_config();
    for (int trial = 0; trial < 3; ++trial)
    {
        const auto a = run_trial(cfg, trial);
        const auto b = run_trial(cfg, trial);
        REQUIRE(a.size() == cfg.schemes.size());
        for (std::size_t s = 0; s < a.size(); ++s)
        {
            REQUIRE(a[s].t1 == b[s].t1);
            REQUIRE(a[s].t2 == b[s].t2);
            REQUIRE(a[s].feasible == b[s].feasible);
        }
    }
}

TEST_CASE("movable placement never loses to the fixed antenna", "[experiments]")
{
    const ExperimentConfig cfg = small_config();
    for (int trial = 0; trial < 8; ++trial)
    {
        const TrialContext ctx = prepare_trial(cfg, trial);
        REQUIRE(ctx.placement1.gain >= ctx.gain1_fixed - 1e-12);
        REQUIRE(ctx.placement2.gain >= ctx.gain2_fixed - 1e-12);
        REQUIRE(ctx.placement1.gain <= gain_upper_bound(ctx.user1) * (1.0 + 1e-9));
    }
}

TEST_CASE("single-path trial reduces to a hand-built allocation", "[experiments]")
{
    // with one receive path the gain is position independent, so the
    // movable and fixed variants see the same problem, solvable directly
    ExperimentConfig cfg = make_sweep_config(SweepKind::t0);
    cfg.phys.num_paths = 1;
    cfg.master_seed = 7;
    cfg.schemes = {Scheme::ma_noma, Scheme::fpa_noma};

    const TrialContext ctx = prepare_trial(cfg, 0);
    const double w2 = std::norm(ctx.user1.path_response[0]);
    REQUIRE(ctx.gain1_fixed == Approx(w2).epsilon(1e-12));
    REQUIRE(ctx.placement1.gain == Approx(w2).epsilon(1e-9));

    const auto outcomes = run_trial(cfg, 0);
    REQUIRE(outcomes[0].t1 == Approx(outcomes[1].t1).epsilon(1e-9));

    AllocProblem pb;
    pb.gain1 = ctx.gain1_fixed;
    pb.gain2 = ctx.gain2_fixed;
    pb.noise1 = cfg.phys.noise1;
    pb.noise2 = cfg.phys.noise2;
    pb.p_max = cfg.phys.p_max();
    pb.blocklength = cfg.phys.blocklength;
    pb.t_min = cfg.phys.t_min;
    const AllocSolution direct = solve_noma(pb, cfg.search);
    REQUIRE(outcomes[1].t1 == Approx(direct.t1).epsilon(1e-12));
    REQUIRE(outcomes[1].t2 == Approx(direct.t2).epsilon(1e-12));
}

TEST_CASE("degenerate sweep equals the single trial", "[experiments]")
{
    ExperimentConfig cfg = make_sweep_config(SweepKind::t0);
    cfg.trials = 1;
    cfg.master_seed = 31;
    cfg.grid = {1.0};
    cfg.workers = 1;

    const auto rows = run_sweep(cfg);
    ExperimentConfig point = cfg;
    point.phys.t_min = 1.0;
    const auto outcomes = run_trial(point, 0);

    REQUIRE(rows.size() == cfg.schemes.size());
    for (std::size_t s = 0; s < rows.size(); ++s)
    {
        REQUIRE(rows[s].sweep_value == 1.0);
        REQUIRE(rows[s].scheme == cfg.schemes[s]);
        REQUIRE(rows[s].trials == 1);
        REQUIRE(rows[s].mean_t1 == outcomes[s].t1);
        REQUIRE(rows[s].stderr_t1 == 0.0);
    }
}

TEST_CASE("sweep aggregation averages feasible trials only", "[experiments]")
{
    // starve the budget so the floor is unreachable for part of the draws
    ExperimentConfig cfg = make_sweep_config(SweepKind::t0);
    cfg.trials = 24;
    cfg.master_seed = 404;
    cfg.grid = {3.0};
    cfg.phys.p_max_db = 17.0;
    cfg.phys.blocklength = 100;
    cfg.schemes = {Scheme::fpa_noma};
    cfg.workers = 1;

    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 1);

    ExperimentConfig point = cfg;
    point.phys.t_min = 3.0;
    int feasible = 0;
    double sum = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial)
    {
        const auto outcome = run_trial(point, trial)[0];
        if (outcome.feasible)
        {
            ++feasible;
            sum += outcome.t1;
        }
    }
    REQUIRE(feasible > 0);
    REQUIRE(feasible < cfg.trials); // the scenario must actually mix
    REQUIRE(rows[0].feasible_rate == Approx(static_cast<double>(feasible) / cfg.trials));
    REQUIRE(rows[0].mean_t1 == sum / feasible);
}

TEST_CASE("sweep output is identical for any worker count", "[experiments]")
{
    ExperimentConfig cfg = small_config();
    cfg.trials = 6;
    cfg.workers = 1;
    const std::string csv1 = to_csv(run_sweep(cfg));
    cfg.workers = 3;
    const std::string csv3 = to_csv(run_sweep(cfg));
    REQUIRE(csv1 == csv3);
}

TEST_CASE("csv schema is stable", "[experiments]")
{
    const ExperimentConfig cfg = small_config();
    const auto rows = run_sweep(cfg);
    const std::string csv = to_csv(rows);
    REQUIRE(csv.rfind("sweep_value,scheme,mean_t1,stderr_t1,mean_t2,feasible_rate,trials\n",
                      0) == 0);
    // one line per row plus the header
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') ==
            static_cast<long>(rows.size()) + 1);
    REQUIRE(csv.find("ma_noma") != std::string::npos);
    REQUIRE(csv.find(',') != std::string::npos);
    REQUIRE(csv.find(';') == std::string::npos);
}

TEST_CASE("sweep configuration errors are rejected", "[experiments]")
{
    ExperimentConfig cfg = small_config();
    cfg.grid = {2.0, 1.0};
    REQUIRE_THROWS_AS(run_sweep(cfg), std::invalid_argument);

    cfg = small_config();
    cfg.trials = 0;
    REQUIRE_THROWS_AS(run_sweep(cfg), std::invalid_argument);

    cfg = make_sweep_config(SweepKind::p2);
    cfg.trials = 1;
    cfg.grid = {0.5, 1.5}; // power fractions beyond 1 are meaningless
    REQUIRE_THROWS_AS(run_sweep(cfg), std::invalid_argument);

    cfg = make_sweep_config(SweepKind::p2);
    cfg.trials = 1;
    cfg.schemes = {Scheme::ma_oma};
    cfg.fixed_p2_fraction = 0.5;
    REQUIRE_THROWS_AS(run_trial(cfg, 0), std::invalid_argument);
}

TEST_CASE("scheme names round-trip", "[experiments]")
{
    for (Scheme s : {Scheme::ma_noma, Scheme::fpa_noma, Scheme::ma_oma, Scheme::fpa_oma})
        REQUIRE(scheme_from_string(scheme_name(s)) == s);
    REQUIRE_FALSE(scheme_from_string("bogus").has_value());
}

TEST_CASE("fixed-power sweep pins the far-user power", "[experiments]")
{
    ExperimentConfig cfg = make_sweep_config(SweepKind::p2);
    cfg.trials = 2;
    cfg.master_seed = 5;
    cfg.grid = {0.7};
    cfg.workers = 1;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 2); // the two superposition schemes
    for (const auto &row : rows)
    {
        REQUIRE(row.sweep_value == 0.7);
        REQUIRE(row.feasible_rate > 0.0);
    }
}

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
// Monte Carlo comparison of the four scheme variants. Every trial draws one
// channel pair and feeds the same draw to all schemes (paired comparison),
// so scheme gaps are resolved at far fewer trials than independent
// sampling would need. Per-trial seeds are derived statelessly from the
// master seed, and aggregation runs in trial order, so results are
// bit-identical for any worker count.

#ifndef manoma_experiments_H
#define manoma_experiments_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "manoma/alloc.hpp"
#include "manoma/channel.hpp"
#include "manoma/placement.hpp"

namespace manoma
{

enum class Scheme
{
    ma_noma,
    fpa_noma,
    ma_oma,
    fpa_oma,
};

const char *scheme_name(Scheme scheme);
std::optional<Scheme> scheme_from_string(const std::string &name);
bool scheme_is_slotted(Scheme scheme); // true for the OMA variants
bool scheme_is_movable(Scheme scheme);

enum class SweepKind
{
    p2, // far-user power fixed at a fraction of the budget
    n,  // blocklength
    t0, // far-user throughput floor
};

const char *sweep_name(SweepKind kind);

// Scenario constants; defaults follow the simulated setup (near user 20 m,
// far user 60 m, 4 paths, region side 3 wavelengths, 60 dB budget over
// unit noise).
struct PhysicalParams
{
    double d1 = 20.0;
    double d2 = 60.0;
    double path_loss_exponent = 1.0;
    int num_paths = 4;
    double wavelength = 1.0;
    double region_side = 3.0; // in units of the wavelength value above
    double p_max_db = 60.0;   // budget over the reference noise power, dB
    double noise1 = 1.0;
    double noise2 = 1.0;
    int blocklength = 100;
    double t_min = 1.0;

    double p_max() const;
    ChannelPairParams channel_params() const;
};

struct ExperimentConfig
{
    std::vector<Scheme> schemes{Scheme::ma_noma, Scheme::fpa_noma, Scheme::ma_oma,
                                Scheme::fpa_oma};
    int trials = 1000;
    std::uint64_t master_seed = 1;
    SweepKind sweep = SweepKind::t0;
    std::vector<double> grid; // empty selects the default grid for the sweep
    PhysicalParams phys;
    ScaConfig sca;
    SearchConfig search;
    int workers = 0; // 0 = hardware concurrency
    // When set, the far user's power is pinned to this fraction of the
    // budget and only the rates are optimized (the fixed-power sweep).
    std::optional<double> fixed_p2_fraction;
};

// Default grid values and figure-matching (blocklength, floor) presets.
std::vector<double> default_grid(SweepKind kind);
ExperimentConfig make_sweep_config(SweepKind kind);

// One channel draw with placements solved for both users. Gains at the
// region center double as the fixed-antenna baseline.
struct TrialContext
{
    UserChannel user1;
    UserChannel user2;
    double gain1_fixed = 0.0;
    double gain2_fixed = 0.0;
    PlacementResult placement1;
    PlacementResult placement2;
};

TrialContext prepare_trial(const ExperimentConfig &config, std::int64_t trial_index);

struct SchemeOutcome
{
    double t1 = 0.0;
    double t2 = 0.0;
    bool feasible = false;
};

SchemeOutcome evaluate_scheme(Scheme scheme, const TrialContext &trial,
                              const PhysicalParams &phys, const SearchConfig &search,
                              std::optional<double> fixed_p2_fraction);

// Outcomes of one trial at the config's own operating point, aligned with
// config.schemes. Pure function of (config, trial_index).
std::vector<SchemeOutcome> run_trial(const ExperimentConfig &config, std::int64_t trial_index);

// Aggregate of one (grid value, scheme) cell. Means are over feasible
// trials only; the feasible rate says how many that was.
struct SweepRow
{
    double sweep_value = 0.0;
    Scheme scheme = Scheme::ma_noma;
    double mean_t1 = 0.0;
    double stderr_t1 = 0.0;
    double mean_t2 = 0.0;
    double feasible_rate = 0.0;
    int trials = 0;
};

// Full sweep: grid x schemes x trials, channel draws shared across grid
// values and schemes within a trial. Deterministic for a fixed master seed
// regardless of worker count.
std::vector<SweepRow> run_sweep(const ExperimentConfig &config);

} // namespace manoma

#endif

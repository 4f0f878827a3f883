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

#include "manoma/placement.hpp"
#include "manoma/rng.hpp"

#include <algorithm>
#include <cmath>

namespace manoma
{

AntennaPosition clamp_to_region(const AntennaPosition &u, double half_width)
{
    return {std::clamp(u.x, -half_width, half_width), std::clamp(u.y, -half_width, half_width)};
}

ScaState make_sca_state(const UserChannel &channel, const AntennaPosition &anchor)
{
    channel.validate();
    ScaState s;
    s.anchor = anchor;
    s.phase_slope = channel.geometry.phase_slopes();
    s.wavenumber = 2.0 * M_PI / channel.geometry.wavelength;

    // Weight vector w .* conj(h) with h = w^H f(anchor): the rank-1 response
    // matrix applied to the anchor response, split into magnitude and phase.
    const Eigen::VectorXcd f = field_response(channel.geometry, anchor);
    const std::complex<double> h = channel.path_response.dot(f);
    const Eigen::VectorXcd v = channel.path_response * h;
    s.path_weight = v.array().abs();
    s.path_phase = v.array().arg();
    s.gain = std::norm(h);
    return s;
}

namespace
{
Eigen::ArrayXd minorant_angles(const ScaState &s, const AntennaPosition &u)
{
    return (s.phase_slope * u.vec()).array() - s.path_phase;
}
} // namespace

double surrogate_objective(const ScaState &state, const AntennaPosition &u)
{
    return (state.path_weight * minorant_angles(state, u).cos()).sum();
}

double surrogate_objective(const UserChannel &channel, const AntennaPosition &anchor,
                           const AntennaPosition &u)
{
    return surrogate_objective(make_sca_state(channel, anchor), u);
}

Eigen::Vector2d surrogate_gradient(const ScaState &state, const AntennaPosition &u)
{
    const Eigen::ArrayXd modulation = state.path_weight * minorant_angles(state, u).sin();
    return -(state.phase_slope.transpose() * modulation.matrix());
}

Eigen::Vector2d surrogate_gradient(const UserChannel &channel, const AntennaPosition &anchor,
                                   const AntennaPosition &u)
{
    return surrogate_gradient(make_sca_state(channel, anchor), u);
}

double curvature_bound(const ScaState &state)
{
    return 2.0 * state.wavenumber * state.wavenumber * state.path_weight.sum();
}

double curvature_bound(const UserChannel &channel, const AntennaPosition &anchor)
{
    return curvature_bound(make_sca_state(channel, anchor));
}

ScaState sca_step(const UserChannel &channel, const ScaState &state)
{
    const double delta = curvature_bound(state);
    if (!(delta > 0.0))
        return state; // zero channel: every position is stationary

    const Eigen::Vector2d grad = surrogate_gradient(state, state.anchor);
    AntennaPosition next{state.anchor.x + grad.x() / delta, state.anchor.y + grad.y() / delta};
    next = clamp_to_region(next, channel.geometry.region_half_width);

    ScaState updated = make_sca_state(channel, next);
    updated.iteration = state.iteration + 1;
    return updated;
}

namespace
{
PlacementResult ascend_from(const UserChannel &channel, const AntennaPosition &start,
                            const ScaConfig &config)
{
    const double half = channel.geometry.region_half_width;
    ScaState state = make_sca_state(channel, clamp_to_region(start, half));

    PlacementResult result;
    result.initial_gain = state.gain;
    for (int it = 0; it < config.max_iterations; ++it)
    {
        const ScaState next = sca_step(channel, state);
        const double improvement = next.gain - state.gain;
        state = next;
        if (improvement <= config.convergence_tol * std::max(state.gain, 1e-300))
        {
            result.converged = true;
            break;
        }
    }
    result.position = state.anchor;
    result.gain = state.gain;
    result.iterations = state.iteration;
    return result;
}
} // namespace

PlacementResult optimize_position(const UserChannel &channel, const ScaConfig &config)
{
    if (config.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1");
    if (!(config.convergence_tol > 0.0))
        throw std::invalid_argument("convergence_tol must be positive");

    PlacementResult best = ascend_from(channel, config.initial_position, config);
    const double initial_gain = best.initial_gain;

    const double half = channel.geometry.region_half_width;
    std::mt19937_64 gen(config.start_seed);
    for (int s = 0; s < config.extra_starts; ++s)
    {
        const AntennaPosition start{uniform_in(gen, -half, half), uniform_in(gen, -half, half)};
        PlacementResult candidate = ascend_from(channel, start, config);
        if (candidate.gain > best.gain)
            best = candidate;
    }
    best.initial_gain = initial_gain;
    return best;
}

} // namespace manoma

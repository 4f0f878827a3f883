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
// Antenna placement by successive convex approximation: at the current
// position the non-concave gain is minorized, first by the real part of the
// cross-correlation with the current response (a sum of per-path cosines),
// then by a separable concave quadratic whose box-constrained maximizer is
// a closed-form clamped gradient step. Every accepted step can only raise
// the true gain.

#ifndef manoma_placement_H
#define manoma_placement_H

#include <cstdint>

#include "manoma/channel.hpp"

namespace manoma
{

struct ScaConfig
{
    int max_iterations = 200;
    double convergence_tol = 1e-8; // relative gain improvement per step
    AntennaPosition initial_position{};
    // Extra uniform-random restarts over the region. Zero keeps the single
    // center start the scheme is normally run with.
    int extra_starts = 0;
    std::uint64_t start_seed = 0;
};

// Expansion of the gain about one anchor position: per-path weights and
// phase offsets of the cosine minorant, the phase slopes of the geometry,
// and the exact gain at the anchor.
struct ScaState
{
    AntennaPosition anchor;
    Eigen::Matrix<double, Eigen::Dynamic, 2> phase_slope; // rows: (2*pi/lambda)*[sin(el)cos(az), cos(el)]
    Eigen::ArrayXd path_weight; // magnitudes of w .* conj(w^H f(anchor))
    Eigen::ArrayXd path_phase;  // phase offsets of the same products
    double wavenumber = 0.0;    // 2*pi/lambda
    double gain = 0.0;          // exact gain at the anchor
    int iteration = 0;
};

ScaState make_sca_state(const UserChannel &channel, const AntennaPosition &anchor);

// Cosine minorant value: sum_p weight_p * cos(slope_p . u - phase_p).
// Equals the gain at the anchor; twice it minus the anchor gain lower-bounds
// the gain everywhere.
double surrogate_objective(const ScaState &state, const AntennaPosition &u);
double surrogate_objective(const UserChannel &channel, const AntennaPosition &anchor,
                           const AntennaPosition &u);

// Gradient of the cosine minorant at u.
Eigen::Vector2d surrogate_gradient(const ScaState &state, const AntennaPosition &u);
Eigen::Vector2d surrogate_gradient(const UserChannel &channel, const AntennaPosition &anchor,
                                   const AntennaPosition &u);

// Curvature bound (8*pi^2/lambda^2) * sum_p weight_p. Dominates the
// spectral norm of the minorant's Hessian everywhere, so the quadratic
// built from it stays below the minorant.
double curvature_bound(const ScaState &state);
double curvature_bound(const UserChannel &channel, const AntennaPosition &anchor);

// One iteration: maximize the separable quadratic minorant over the box.
// Its Hessian is a negative multiple of the identity, so the unconstrained
// maximizer anchor + grad/delta clamped componentwise to the box is exact,
// not an approximation. Returns the re-expanded state; gain never drops.
ScaState sca_step(const UserChannel &channel, const ScaState &state);

struct PlacementResult
{
    AntennaPosition position;
    double gain = 0.0;
    double initial_gain = 0.0; // gain at the configured start position
    int iterations = 0;
    bool converged = false;
};

// Full ascent from the configured start (plus optional random restarts);
// stops on relative improvement below tolerance or the iteration cap.
// The returned gain is never below the gain at the start position.
PlacementResult optimize_position(const UserChannel &channel, const ScaConfig &config = {});

// Componentwise clamp into the closed square region.
AntennaPosition clamp_to_region(const AntennaPosition &u, double half_width);

} // namespace manoma

#endif

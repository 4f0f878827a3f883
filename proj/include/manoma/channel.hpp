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

#ifndef manoma_channel_H
#define manoma_channel_H

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <utility>

namespace manoma
{

// 2-D coordinate of a movable antenna inside its square region,
// measured from the region center.
struct AntennaPosition
{
    double x = 0.0;
    double y = 0.0;

    Eigen::Vector2d vec() const { return {x, y}; }
    static AntennaPosition origin() { return {}; }
};

// Far-field receive geometry of one user: per-path elevation/azimuth angles,
// carrier wavelength and the half-width of the square movable region.
// Moving the antenna changes only per-path phases; angles and path
// amplitudes stay fixed.
struct ReceiveGeometry
{
    double wavelength = 1.0;        // lambda, any consistent length unit
    double region_half_width = 1.5; // A/2, same unit as wavelength
    Eigen::ArrayXd elevation;       // radians, one entry per path
    Eigen::ArrayXd azimuth;         // radians, one entry per path

    Eigen::Index num_paths() const { return elevation.size(); }

    // Per-path phase slope (2*pi/lambda) * [sin(el)*cos(az), cos(el)],
    // one row per path: the phase of path p at position u is row(p) . u.
    Eigen::Matrix<double, Eigen::Dynamic, 2> phase_slopes() const;

    // Throws std::invalid_argument on inconsistent sizes or non-positive
    // wavelength / region size.
    void validate() const;
};

// Receive channel of one user: geometry plus the complex per-path response
// vector of the receive region, AP distance and noise power.
struct UserChannel
{
    ReceiveGeometry geometry;
    Eigen::VectorXcd path_response; // w, one complex coefficient per path
    double distance = 1.0;          // d, meters
    double noise_power = 1.0;       // sigma^2, linear

    void validate() const;
};

// Per-path receive phase vector f(u) for an antenna position. Every
// component has unit modulus; at the region center f is the all-ones vector.
Eigen::VectorXcd field_response(const ReceiveGeometry &geometry, const AntennaPosition &u);

// Channel power gain |h|^2 = |w^H f(u)|^2 at an antenna position.
double gain(const UserChannel &channel, const AntennaPosition &u);

// Phase-alignment upper bound on the gain: (l1 norm of w)^2. The gain at any
// position in the region never exceeds this value.
double gain_upper_bound(const UserChannel &channel);

// Parameters of the random two-user downlink instance. Defaults follow the
// simulated scenario: near user at 20 m, far user at 60 m, unit path-loss
// exponent, 4 receive paths, region side 3 wavelengths, unit noise power.
struct ChannelPairParams
{
    double d1 = 20.0;               // near (core) user distance, m
    double d2 = 60.0;               // far (edge) user distance, m
    double path_loss_exponent = 1.0;
    int num_paths = 4;
    double wavelength = 1.0;
    double region_side = 3.0;       // A, same unit as wavelength
    double noise1 = 1.0;
    double noise2 = 1.0;
    int max_resample = 1000;        // cap on ordering rejection loops
};

// Draws one complex path-response vector: iid circularly symmetric Gaussian
// components with variance d^(-alpha) / num_paths each.
Eigen::VectorXcd sample_path_response(std::mt19937_64 &gen, double distance,
                                      double path_loss_exponent, int num_paths);

// Draws elevation/azimuth angles iid uniform over [0, pi].
ReceiveGeometry sample_geometry(std::mt19937_64 &gen, int num_paths, double wavelength,
                                double region_side);

// Draws the two-user channel pair for one trial. Resamples the whole pair
// until the near user dominates in l1 norm (the ordering the power-domain
// scheme relies on); throws std::runtime_error if the cap is exhausted.
// Pure function of (seed, params).
std::pair<UserChannel, UserChannel> sample_channel_pair(std::uint64_t seed,
                                                        const ChannelPairParams &params = {});

} // namespace manoma

#endif

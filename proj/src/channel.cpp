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

#include "manoma/channel.hpp"
#include "manoma/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace manoma
{

Eigen::Matrix<double, Eigen::Dynamic, 2> ReceiveGeometry::phase_slopes() const
{
    const Eigen::Index n = num_paths();
    const double k = 2.0 * M_PI / wavelength;
    Eigen::Matrix<double, Eigen::Dynamic, 2> slopes(n, 2);
    for (Eigen::Index p = 0; p < n; ++p)
    {
        slopes(p, 0) = k * std::sin(elevation[p]) * std::cos(azimuth[p]);
        slopes(p, 1) = k * std::cos(elevation[p]);
    }
    return slopes;
}

void ReceiveGeometry::validate() const
{
    if (num_paths() < 1)
        throw std::invalid_argument("geometry needs at least one path");
    if (azimuth.size() != elevation.size())
        throw std::invalid_argument("elevation/azimuth size mismatch");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wavelength must be positive");
    if (!(region_half_width > 0.0))
        throw std::invalid_argument("region half-width must be positive");
}

void UserChannel::validate() const
{
    geometry.validate();
    if (path_response.size() != geometry.num_paths())
        throw std::invalid_argument("path response length must equal the path count");
    if (!(distance > 0.0))
        throw std::invalid_argument("distance must be positive");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("noise power must be positive");
}

Eigen::VectorXcd field_response(const ReceiveGeometry &geometry, const AntennaPosition &u)
{
    geometry.validate();
    const Eigen::Index n = geometry.num_paths();
    const double k = 2.0 * M_PI / geometry.wavelength;
    Eigen::VectorXcd f(n);
    for (Eigen::Index p = 0; p < n; ++p)
    {
        const double phase = k * (u.x * std::sin(geometry.elevation[p]) * std::cos(geometry.azimuth[p]) +
                                  u.y * std::cos(geometry.elevation[p]));
        f[p] = std::polar(1.0, phase);
    }
    return f;
}

double gain(const UserChannel &channel, const AntennaPosition &u)
{
    // |w^H f|^2; equals the quadratic form f^H (w w^H) f of the rank-1
    // response matrix.
    return std::norm(channel.path_response.dot(field_response(channel.geometry, u)));
}

double gain_upper_bound(const UserChannel &channel)
{
    const double l1 = channel.path_response.lpNorm<1>();
    return l1 * l1;
}

Eigen::VectorXcd sample_path_response(std::mt19937_64 &gen, double distance,
                                      double path_loss_exponent, int num_paths)
{
    if (num_paths < 1)
        throw std::invalid_argument("num_paths must be at least 1");
    if (!(distance > 0.0))
        throw std::invalid_argument("distance must be positive");
    const double variance = std::pow(distance, -path_loss_exponent) / num_paths;
    const double scale = std::sqrt(variance);
    Eigen::VectorXcd w(num_paths);
    for (int p = 0; p < num_paths; ++p)
        w[p] = scale * complex_gaussian(gen);
    return w;
}

ReceiveGeometry sample_geometry(std::mt19937_64 &gen, int num_paths, double wavelength,
                                double region_side)
{
    ReceiveGeometry g;
    g.wavelength = wavelength;
    g.region_half_width = region_side / 2.0;
    g.elevation.resize(num_paths);
    g.azimuth.resize(num_paths);
    for (int p = 0; p < num_paths; ++p)
        g.elevation[p] = uniform_in(gen, 0.0, M_PI);
    for (int p = 0; p < num_paths; ++p)
        g.azimuth[p] = uniform_in(gen, 0.0, M_PI);
    g.validate();
    return g;
}

std::pair<UserChannel, UserChannel> sample_channel_pair(std::uint64_t seed,
                                                        const ChannelPairParams &params)
{
    if (!(params.d1 < params.d2))
        throw std::invalid_argument("core user must be nearer than edge user (d1 < d2)");
    if (!(params.path_loss_exponent > 0.0))
        throw std::invalid_argument("path-loss exponent must be positive");
    if (!(params.noise1 > 0.0) || !(params.noise2 > 0.0))
        throw std::invalid_argument("noise powers must be positive");
    if (params.max_resample < 1)
        throw std::invalid_argument("max_resample must be at least 1");

    std::mt19937_64 gen(seed);
    for (int attempt = 0; attempt < params.max_resample; ++attempt)
    {
        UserChannel u1;
        u1.geometry = sample_geometry(gen, params.num_paths, params.wavelength, params.region_side);
        u1.path_response = sample_path_response(gen, params.d1, params.path_loss_exponent, params.num_paths);
        u1.distance = params.d1;
        u1.noise_power = params.noise1;

        UserChannel u2;
        u2.geometry = sample_geometry(gen, params.num_paths, params.wavelength, params.region_side);
        u2.path_response = sample_path_response(gen, params.d2, params.path_loss_exponent, params.num_paths);
        u2.distance = params.d2;
        u2.noise_power = params.noise2;

        // Keep only pairs where the near user dominates in l1 norm. The pair
        // is redrawn whole so the accepted draws keep their conditional
        // distribution; relabeling would detach gains from distances.
        if (u1.path_response.lpNorm<1>() > u2.path_response.lpNorm<1>())
            return {std::move(u1), std::move(u2)};
    }
    throw std::runtime_error("channel pair ordering not met after " +
                             std::to_string(params.max_resample) +
                             " draws; parameters look degenerate");
}

} // namespace manoma

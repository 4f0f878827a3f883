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
// Test-only reference implementations. Everything here is written against
// the mathematical definitions directly (extended precision, brute-force
// matrices, finite differences, grids) and stays independent of the library
// code paths it is used to check.

#ifndef manoma_tests_oracles_H
#define manoma_tests_oracles_H

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "manoma/alloc.hpp"
#include "manoma/channel.hpp"
#include "manoma/rng.hpp"

namespace oracle
{

// ---- extended-precision scalar references -------------------------------

inline long double q_ld(long double x)
{
    return 0.5L * erfcl(x / sqrtl(2.0L));
}

inline long double dispersion_ld(long double snr, long double n, long double rate)
{
    const long double ln2 = 0.69314718055994530942L;
    const long double variance_factor = 1.0L - 1.0L / ((1.0L + snr) * (1.0L + snr));
    return ln2 * sqrtl(n / variance_factor) * (log1pl(snr) / ln2 - rate);
}

// Truncated-series form of 1-(1+snr)^-2 = 2g - 3g^2 + 4g^3 - ..., accurate
// for tiny snr where the direct difference cancels.
inline long double dispersion_series_ld(long double snr, long double n, long double rate)
{
    const long double ln2 = 0.69314718055994530942L;
    const long double g = snr;
    const long double variance_factor = 2.0L * g - 3.0L * g * g + 4.0L * g * g * g;
    return ln2 * sqrtl(n / variance_factor) * (log1pl(snr) / ln2 - rate);
}

inline long double eps_ld(long double snr, long double n, long double rate)
{
    if (snr <= 0.0L)
        return rate > 0.0L ? 1.0L : 0.5L;
    return q_ld(dispersion_ld(snr, n, rate));
}

inline long double single_link_t_ld(long double snr, long double n, long double rate)
{
    return rate * (1.0L - eps_ld(snr, n, rate));
}

// Near-user throughput from first principles: SINRs as direct fractions,
// error probabilities in extended precision, the branch rule applied on the
// no-cancellation capacity.
inline long double noma_t1_ld(long double g1, long double noise1, long double p1,
                              long double p2, long double n, long double r1, long double r2)
{
    const long double snr_x2 = g1 * p2 / (g1 * p1 + noise1);
    const long double snr_sic = g1 * p1 / noise1;
    const long double snr_no_sic = g1 * p1 / (g1 * p2 + noise1);
    const long double e21 = eps_ld(snr_x2, n, r2);
    const long double e11 = eps_ld(snr_sic, n, r1);
    const long double cap_no = log1pl(snr_no_sic) / 0.69314718055994530942L;
    const long double e1 = r1 <= cap_no
                               ? e11 * (1.0L - e21) + eps_ld(snr_no_sic, n, r1) * e21
                               : e11 * (1.0L - e21) + e21;
    return r1 * (1.0L - e1);
}

// Coarse exhaustive search over (p2, r2, r1) for the allocation problem,
// honoring the power budget equality and the far-user floor.
inline double noma_grid_oracle(const manoma::AllocProblem &pb, int n_p2, int n_r2, int n_r1)
{
    const long double n = pb.blocklength;
    long double best = 0.0L;
    for (int i = 0; i <= n_p2; ++i)
    {
        const long double p2 = pb.p_max * static_cast<long double>(i) / n_p2;
        const long double p1 = pb.p_max - p2;
        const long double snr2 = pb.gain2 * p2 / (pb.gain2 * p1 + pb.noise2);
        const long double cap2 = log1pl(snr2) / 0.69314718055994530942L;
        const long double snr1 = pb.gain1 * p1 / pb.noise1;
        const long double cap1 = log1pl(snr1) / 0.69314718055994530942L;
        for (int j = 0; j <= n_r2; ++j)
        {
            const long double r2 = (cap2 + 1.0L) * j / n_r2;
            if (single_link_t_ld(snr2, n, r2) < pb.t_min - 1e-9L)
                continue;
            for (int k = 0; k <= n_r1; ++k)
            {
                const long double r1 = cap1 * k / n_r1;
                best = std::max(best, noma_t1_ld(pb.gain1, pb.noise1, p1, p2, n, r1, r2));
            }
        }
    }
    return static_cast<double>(best);
}

// Exhaustive slotted baseline: every integer split, rate grids per slot.
inline double oma_grid_oracle(const manoma::AllocProblem &pb, int n_rate)
{
    const long double snr1 = pb.p_max * pb.gain1 / pb.noise1;
    const long double snr2 = pb.p_max * pb.gain2 / pb.noise2;
    const long double total = pb.blocklength;
    long double best = -1.0L;
    for (int n2 = 1; n2 < pb.blocklength; ++n2)
    {
        const int n1 = pb.blocklength - n2;
        const long double frac2 = static_cast<long double>(n2) / total;
        bool feasible = pb.t_min <= 0.0;
        if (!feasible)
        {
            const long double cap2 = log1pl(snr2) / 0.69314718055994530942L;
            for (int j = 0; j <= n_rate && !feasible; ++j)
            {
                const long double r2 = (cap2 + 1.0L) * j / n_rate;
                feasible = frac2 * single_link_t_ld(snr2, n2, r2) >= pb.t_min - 1e-9L;
            }
        }
        if (!feasible)
            continue;
        const long double cap1 = log1pl(snr1) / 0.69314718055994530942L;
        for (int k = 0; k <= n_rate; ++k)
        {
            const long double r1 = (cap1 + 1.0L) * k / n_rate;
            best = std::max(best, (1.0L - frac2) * single_link_t_ld(snr1, n1, r1));
        }
    }
    return static_cast<double>(best);
}

// ---- channel references --------------------------------------------------

// Direct per-component phase evaluation of the receive response in extended
// precision.
inline std::complex<long double> frv_component_ld(long double elevation, long double azimuth,
                                                  long double wavelength, long double x,
                                                  long double y)
{
    const long double pi = 3.14159265358979323846L;
    const long double phase =
        2.0L * pi / wavelength * (x * sinl(elevation) * cosl(azimuth) + y * cosl(elevation));
    return {cosl(phase), sinl(phase)};
}

// Gain through the explicit rank-1 response matrix, no shared code with the
// library's inner-product route.
inline double gain_via_matrix(const manoma::UserChannel &ch, const manoma::AntennaPosition &u)
{
    const Eigen::VectorXcd f = manoma::field_response(ch.geometry, u);
    const Eigen::MatrixXcd response_matrix = ch.path_response * ch.path_response.adjoint();
    return (f.adjoint() * response_matrix * f)(0, 0).real();
}

// Exhaustive gain search over the closed box at a given per-axis point
// count, using the separable structure of the per-path phases.
inline double grid_gain_max(const manoma::UserChannel &ch, int points_per_axis)
{
    const double half = ch.geometry.region_half_width;
    const auto slopes = ch.geometry.phase_slopes();
    const Eigen::Index num_paths = ch.path_response.size();
    const int m = points_per_axis;
    std::vector<std::complex<double>> along_x(static_cast<std::size_t>(m) * num_paths);
    std::vector<std::complex<double>> along_y(static_cast<std::size_t>(m) * num_paths);
    for (int i = 0; i < m; ++i)
    {
        const double coord = -half + 2.0 * half * i / (m - 1);
        for (Eigen::Index p = 0; p < num_paths; ++p)
        {
            along_x[i * num_paths + p] =
                std::polar(1.0, slopes(p, 0) * coord) * std::conj(ch.path_response[p]);
            along_y[i * num_paths + p] = std::polar(1.0, slopes(p, 1) * coord);
        }
    }
    double best = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
        {
            std::complex<double> h = 0.0;
            for (Eigen::Index p = 0; p < num_paths; ++p)
                h += along_x[i * num_paths + p] * along_y[j * num_paths + p];
            best = std::max(best, std::norm(h));
        }
    return best;
}

// ---- calculus references --------------------------------------------------

template <class F>
Eigen::Vector2d central_gradient(F &&f, const manoma::AntennaPosition &u, double h)
{
    return {(f(manoma::AntennaPosition{u.x + h, u.y}) - f(manoma::AntennaPosition{u.x - h, u.y})) /
                (2.0 * h),
            (f(manoma::AntennaPosition{u.x, u.y + h}) - f(manoma::AntennaPosition{u.x, u.y - h})) /
                (2.0 * h)};
}

template <class F>
Eigen::Matrix2d central_hessian(F &&f, const manoma::AntennaPosition &u, double h)
{
    const double f0 = f(u);
    Eigen::Matrix2d m;
    m(0, 0) = (f(manoma::AntennaPosition{u.x + h, u.y}) - 2.0 * f0 +
               f(manoma::AntennaPosition{u.x - h, u.y})) /
              (h * h);
    m(1, 1) = (f(manoma::AntennaPosition{u.x, u.y + h}) - 2.0 * f0 +
               f(manoma::AntennaPosition{u.x, u.y - h})) /
              (h * h);
    m(0, 1) = m(1, 0) = (f(manoma::AntennaPosition{u.x + h, u.y + h}) -
                         f(manoma::AntennaPosition{u.x + h, u.y - h}) -
                         f(manoma::AntennaPosition{u.x - h, u.y + h}) +
                         f(manoma::AntennaPosition{u.x - h, u.y - h})) /
                        (4.0 * h * h);
    return m;
}

inline double spectral_norm(const Eigen::Matrix2d &m)
{
    const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m).eigenvalues();
    return std::max(std::abs(ev[0]), std::abs(ev[1]));
}

// ---- instance builders -----------------------------------------------------

inline manoma::UserChannel random_channel(std::mt19937_64 &gen, int paths = 4,
                                          double distance = 20.0, double region_side = 3.0)
{
    manoma::UserChannel ch;
    ch.geometry = manoma::sample_geometry(gen, paths, 1.0, region_side);
    ch.path_response = manoma::sample_path_response(gen, distance, 1.0, paths);
    ch.distance = distance;
    ch.noise_power = 1.0;
    return ch;
}

inline manoma::AntennaPosition random_position(std::mt19937_64 &gen, double half)
{
    return {manoma::uniform_in(gen, -half, half), manoma::uniform_in(gen, -half, half)};
}

} // namespace oracle

#endif

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

#include "manoma/placement.hpp"
#include "manoma/rng.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace manoma;
using Catch::Approx;

namespace
{
// channel whose phase-aligned optimum sits exactly at `target`
UserChannel channel_peaked_at(std::mt19937_64 &gen, const AntennaPosition &target)
{
    UserChannel ch = oracle::random_channel(gen);
    const auto slopes = ch.geometry.phase_slopes();
    for (Eigen::Index p = 0; p < ch.path_response.size(); ++p)
    {
        const double phase = slopes(p, 0) * target.x + slopes(p, 1) * target.y;
        ch.path_response[p] = std::polar(std::abs(ch.path_response[p]), phase);
    }
    return ch;
}
} // namespace

TEST_CASE("minorant equals the gain at the anchor", "[placement]")
{
    std::mt19937_64 gen(31);
    for (int i = 0; i < 100; ++i)
    {
        const UserChannel ch = oracle::random_channel(gen);
        const AntennaPosition anchor = oracle::random_position(gen, ch.geometry.region_half_width);
        const ScaState state = make_sca_state(ch, anchor);
        REQUIRE(surrogate_objective(state, anchor) ==
                Approx(state.gain).epsilon(1e-12).margin(1e-300));
        REQUIRE(state.gain == Approx(gain(ch, anchor)).epsilon(1e-12));
    }
}

TEST_CASE("doubled minorant minus the anchor gain stays below the true gain", "[placement]")
{
    std::mt19937_64 gen(32);
    const UserChannel ch = oracle::random_channel(gen);
    const double half = ch.geometry.region_half_width;
    const ScaState state = make_sca_state(ch, oracle::random_position(gen, half));
    for (int i = 0; i < 1000; ++i)
    {
        const AntennaPosition u = oracle::random_position(gen, half);
        REQUIRE(2.0 * surrogate_objective(state, u) - state.gain <= gain(ch, u) + 1e-9);
    }
}

TEST_CASE("single-path minorant is one cosine with the alignment bound as maximum",
          "[placement]")
{
    std::mt19937_64 gen(33);
    const UserChannel ch = oracle::random_channel(gen, 1);
    const ScaState state = make_sca_state(ch, AntennaPosition::origin());
    // one path: weight is |w|^2 (anchor response is |w|^2 itself)
    const double w2 = std::norm(ch.path_response[0]);
    REQUIRE(state.path_weight.size() == 1);
    REQUIRE(state.path_weight[0] == Approx(w2).epsilon(1e-12));
    REQUIRE(surrogate_objective(state, AntennaPosition::origin()) == Approx(w2).epsilon(1e-12));
    for (int i = 0; i < 100; ++i)
        REQUIRE(surrogate_objective(state, oracle::random_position(gen, 1.5)) <= w2 + 1e-12);
}

TEST_CASE("quadratic lower bound is tangent at the anchor and valid across the box",
          "[placement]")
{
    std::mt19937_64 gen(34);
    for (int i = 0; i < 20; ++i)
    {
        const UserChannel ch = oracle::random_channel(gen);
        const double half = ch.geometry.region_half_width;
        const ScaState state = make_sca_state(ch, oracle::random_position(gen, half));
        const double delta = curvature_bound(state);
        const Eigen::Vector2d grad = surrogate_gradient(state, state.anchor);
        const double g_anchor = surrogate_objective(state, state.anchor);

        auto quadratic = [&](const AntennaPosition &u) {
            const Eigen::Vector2d step = u.vec() - state.anchor.vec();
            return g_anchor + grad.dot(step) - 0.5 * delta * step.squaredNorm();
        };
        REQUIRE(quadratic(state.anchor) == Approx(g_anchor).epsilon(1e-14));
        for (int k = 0; k < 50; ++k)
        {
            const AntennaPosition u = oracle::random_position(gen, half);
            REQUIRE(quadratic(u) <= surrogate_objective(state, u) + 1e-9);
        }
    }
}

TEST_CASE("minorant gradient matches central differences", "[placement]")
{
    std::mt19937_64 gen(35);
    for (int i = 0; i < 100; ++i)
    {
        const UserChannel ch = oracle::random_channel(gen);
        const double half = ch.geometry.region_half_width;
        const ScaState state = make_sca_state(ch, oracle::random_position(gen, half));
        const AntennaPosition u = oracle::random_position(gen, 0.9 * half);
        const Eigen::Vector2d analytic = surrogate_gradient(state, u);
        const Eigen::Vector2d numeric = oracle::central_gradient(
            [&](const AntennaPosition &q) { return surrogate_objective(state, q); }, u,
            1e-6 * ch.geometry.wavelength);
        REQUIRE((analytic - numeric).norm() <= 1e-6 * std::max(1.0, analytic.norm()));
    }
}

TEST_CASE("single-path gradient matches the closed form", "[placement]")
{
    std::mt19937_64 gen(36);
    const UserChannel ch = oracle::random_channel(gen, 1);
    const ScaState state = make_sca_state(ch, oracle::random_position(gen, 1.0));
    const AntennaPosition u = oracle::random_position(gen, 1.0);

    const double k = 2.0 * M_PI / ch.geometry.wavelength;
    const double ax = std::sin(ch.geometry.elevation[0]) * std::cos(ch.geometry.azimuth[0]);
    const double ay = std::cos(ch.geometry.elevation[0]);
    const double angle = k * (u.x * ax + u.y * ay) - state.path_phase[0];
    const Eigen::Vector2d expected =
        -state.path_weight[0] * k * std::sin(angle) * Eigen::Vector2d{ax, ay};
    REQUIRE((surrogate_gradient(state, u) - expected).norm() <= 1e-12);
}

TEST_CASE("gradient vanishes at a phase-aligned maximum", "[placement]")
{
    std::mt19937_64 gen(37);
    UserChannel ch = oracle::random_channel(gen);
    // real positive responses peak at the center
    ch.path_response = ch.path_response.cwiseAbs().cast<std::complex<double>>();
    const ScaState state = make_sca_state(ch, AntennaPosition::origin());
    REQUIRE(surrogate_gradient(state, state.anchor).norm() <= 1e-12);

    const ScaState stepped = sca_step(ch, state);
    REQUIRE(stepped.anchor.x == 0.0);
    REQUIRE(stepped.anchor.y == 0.0);
}

TEST_CASE("curvature bound closed form and homogeneity", "[placement]")
{
    SECTION("unit single path at unit wavelength")
    {
        std::mt19937_64 gen(38);
        UserChannel ch = oracle::random_channel(gen, 1);
        ch.path_response[0] = std::polar(1.0, 0.7); // |w| = 1 so the anchor weight is 1
        const double delta = curvature_bound(ch, AntennaPosition::origin());
        REQUIRE(delta == Approx(8.0 * M_PI * M_PI).epsilon(1e-12));
    }
    SECTION("doubling the response scales the bound by four")
    {
        std::mt19937_64 gen(39);
        UserChannel ch = oracle::random_channel(gen);
        const AntennaPosition anchor = oracle::random_position(gen, 1.0);
        const double before = curvature_bound(ch, anchor);
        ch.path_response *= 2.0;
        REQUIRE(curvature_bound(ch, anchor) == Approx(4.0 * before).epsilon(1e-12));
    }
}

TEST_CASE("curvature bound dominates sampled Hessians", "[placement]")
{
    std::mt19937_64 gen(40);
    for (int i = 0; i < 20; ++i)
    {
        const UserChannel ch = oracle::random_channel(gen);
        const double half = ch.geometry.region_half_width;
        const ScaState state = make_sca_state(ch, oracle::random_position(gen, half));
        const double delta = curvature_bound(state);
        for (int k = 0; k < 100; ++k)
        {
            const AntennaPosition u = oracle::random_position(gen, 0.9 * half);
            const Eigen::Matrix2d hess = oracle::central_hessian(
                [&](const AntennaPosition &q) { return surrogate_objective(state, q); }, u, 1e-4);
            REQUIRE(oracle::spectral_norm(hess) <= delta * (1.0 + 1e-6) + 1e-9);
        }
    }
}

TEST_CASE("interior step lands exactly on the quadratic maximizer", "[placement]")
{
    std::mt19937_64 gen(41);
    const UserChannel ch = oracle::random_channel(gen);
    // Step length is at most lambda/(4*pi), so anchors well inside the box
    // always step without clamping.
    const ScaState state = make_sca_state(ch, {0.1, -0.2});
    const double delta = curvature_bound(state);
    const Eigen::Vector2d grad = surrogate_gradient(state, state.anchor);
    const ScaState next = sca_step(ch, state);
    REQUIRE(next.anchor.x == Approx(state.anchor.x + grad.x() / delta).margin(1e-15));
    REQUIRE(next.anchor.y == Approx(state.anchor.y + grad.y() / delta).margin(1e-15));
    REQUIRE(next.iteration == state.iteration + 1);
}

TEST_CASE("clamped step maximizes the quadratic over the box", "[placement]")
{
    std::mt19937_64 gen(42);
    int clamped_cases = 0;
    for (int i = 0; i < 40; ++i)
    {
        // peak outside the box pushes boundary anchors outward
        const UserChannel ch = channel_peaked_at(gen, {2.4, 1.9});
        const double half = ch.geometry.region_half_width;
        const ScaState state = make_sca_state(ch, {half, half});
        const double delta = curvature_bound(state);
        const Eigen::Vector2d grad = surrogate_gradient(state, state.anchor);
        const Eigen::Vector2d unclamped = state.anchor.vec() + grad / delta;
        const ScaState next = sca_step(ch, state);
        if (std::abs(unclamped.x()) > half || std::abs(unclamped.y()) > half)
        {
            ++clamped_cases;
            REQUIRE((std::abs(next.anchor.x) == half || std::abs(next.anchor.y) == half));
        }

        auto quadratic = [&](const AntennaPosition &u) {
            const Eigen::Vector2d v = u.vec();
            return -0.5 * delta * v.squaredNorm() +
                   (grad + delta * state.anchor.vec()).dot(v);
        };
        const double at_step = quadratic(next.anchor);
        for (int k = 0; k < 1000; ++k)
            REQUIRE(at_step >= quadratic(oracle::random_position(gen, half)) - 1e-9);
    }
    REQUIRE(clamped_cases > 0);
}

TEST_CASE("gain is monotone along the ascent", "[placement]")
{
    std::mt19937_64 gen(43);
    for (int i = 0; i < 100; ++i)
    {
        const UserChannel ch = oracle::random_channel(gen);
        ScaState state = make_sca_state(ch, oracle::random_position(gen,
                                                                    ch.geometry.region_half_width));
        for (int it = 0; it < 50; ++it)
        {
            const ScaState next = sca_step(ch, state);
            REQUIRE(next.gain >= state.gain - 1e-9);
            state = next;
        }
    }
}

TEST_CASE("single-path ascent reaches the alignment bound", "[placement]")
{
    std::mt19937_64 gen(44);
    for (int i = 0; i < 20; ++i)
    {
        const UserChannel ch = oracle::random_channel(gen, 1);
        const PlacementResult res = optimize_position(ch);
        REQUIRE(res.gain == Approx(gain_upper_bound(ch)).epsilon(1e-6));
        REQUIRE(res.converged);
    }
}

TEST_CASE("returned gain never drops below the start", "[placement]")
{
    std::mt19937_64 gen(45);
    for (int i = 0; i < 50; ++i)
    {
        const UserChannel ch = oracle::random_channel(gen);
        ScaConfig cfg;
        cfg.initial_position = oracle::random_position(gen, ch.geometry.region_half_width);
        const PlacementResult res = optimize_position(ch, cfg);
        REQUIRE(res.gain >= res.initial_gain - 1e-12);
        REQUIRE(res.gain >= gain(ch, cfg.initial_position) - 1e-12);
        REQUIRE(res.gain <= gain_upper_bound(ch) * (1.0 + 1e-9));
    }
}

TEST_CASE("random restarts only improve the result", "[placement]")
{
    std::mt19937_64 gen(46);
    for (int i = 0; i < 20; ++i)
    {
        const UserChannel ch = oracle::random_channel(gen);
        const PlacementResult single = optimize_position(ch);
        ScaConfig cfg;
        cfg.extra_starts = 8;
        cfg.start_seed = derive_seed(9, i);
        const PlacementResult multi = optimize_position(ch, cfg);
        REQUIRE(multi.gain >= single.gain - 1e-12);
        REQUIRE(multi.initial_gain == Approx(single.initial_gain));
    }
}

TEST_CASE("degenerate configurations are rejected", "[placement]")
{
    std::mt19937_64 gen(47);
    const UserChannel ch = oracle::random_channel(gen);
    ScaConfig cfg;
    cfg.max_iterations = 0;
    REQUIRE_THROWS_AS(optimize_position(ch, cfg), std::invalid_argument);
    cfg = {};
    cfg.convergence_tol = 0.0;
    REQUIRE_THROWS_AS(optimize_position(ch, cfg), std::invalid_argument);
}

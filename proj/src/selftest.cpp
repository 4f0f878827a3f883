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

#include "manoma/selftest.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "manoma/experiments.hpp"
#include "manoma/rng.hpp"
#include "manoma/roots.hpp"

namespace manoma
{

namespace
{

struct Checker
{
    std::ostream &out;
    int failures = 0;

    void check(bool ok, const std::string &name, const std::string &detail = "")
    {
        if (ok)
            out << "[ok]   " << name << "\n";
        else
        {
            out << "[FAIL] " << name << (detail.empty() ? "" : ": " + detail) << "\n";
            ++failures;
        }
    }
};

UserChannel random_channel(std::mt19937_64 &gen, int paths = 4, double distance = 20.0)
{
    UserChannel ch;
    ch.geometry = sample_geometry(gen, paths, 1.0, 3.0);
    ch.path_response = sample_path_response(gen, distance, 1.0, paths);
    ch.distance = distance;
    ch.noise_power = 1.0;
    return ch;
}

AntennaPosition random_position(std::mt19937_64 &gen, double half)
{
    return {uniform_in(gen, -half, half), uniform_in(gen, -half, half)};
}

double spectral_norm_2x2(double a, double b, double c)
{
    // symmetric [[a, b], [b, c]]
    const double mid = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return std::max(std::abs(mid + rad), std::abs(mid - rad));
}

} // namespace

int run_selftest(std::uint64_t seed, std::ostream &out)
{
    Checker ck{out};
    std::mt19937_64 gen(derive_seed(seed, 0xdeadbeef));

    // --- channel ---
    {
        bool ones_ok = true, modulus_ok = true, bound_ok = true, rank1_ok = true;
        for (int i = 0; i < 200 && (ones_ok || modulus_ok || bound_ok || rank1_ok); ++i)
        {
            UserChannel ch = random_channel(gen);
            const Eigen::VectorXcd f0 = field_response(ch.geometry, AntennaPosition::origin());
            ones_ok = ones_ok && (f0.array() - 1.0).abs().maxCoeff() <= 1e-12;

            const AntennaPosition u = random_position(gen, ch.geometry.region_half_width);
            const Eigen::VectorXcd f = field_response(ch.geometry, u);
            modulus_ok = modulus_ok && (f.array().abs() - 1.0).abs().maxCoeff() <= 1e-12;

            const double g = gain(ch, u);
            bound_ok = bound_ok && g <= gain_upper_bound(ch) * (1.0 + 1e-9);

            const Eigen::MatrixXcd response_matrix = ch.path_response * ch.path_response.adjoint();
            const double quad = (f.adjoint() * response_matrix * f)(0, 0).real();
            rank1_ok = rank1_ok && std::abs(g - quad) <= 1e-10 * std::max(1.0, std::abs(quad));
        }
        ck.check(ones_ok, "field response at the center is all ones");
        ck.check(modulus_ok, "field response components have unit modulus");
        ck.check(bound_ok, "gain never exceeds the l1 phase-alignment bound");
        ck.check(rank1_ok, "rank-1 gain equals the explicit quadratic form");
    }
    {
        bool det_ok = true, order_ok = true;
        for (int i = 0; i < 100; ++i)
        {
            const std::uint64_t s = derive_seed(seed, 100 + i);
            const auto pair_a = sample_channel_pair(s);
            const auto pair_b = sample_channel_pair(s);
            det_ok = det_ok && pair_a.first.path_response == pair_b.first.path_response &&
                     pair_a.second.path_response == pair_b.second.path_response;
            order_ok = order_ok && pair_a.first.path_response.lpNorm<1>() >
                                       pair_a.second.path_response.lpNorm<1>();
        }
        ck.check(det_ok, "channel pair sampling is a pure function of the seed");
        ck.check(order_ok, "near user dominates in l1 norm on every draw");
    }

    // --- error model ---
    {
        bool mono_ok = true, algebra_ok = true, order_ok = true;
        for (int i = 0; i < 500; ++i)
        {
            const int n = 50 + static_cast<int>(gen() % 400);
            const double g1 = std::norm(complex_gaussian(gen)) * 10.0 + 1e-3;
            const double p2 = uniform_in(gen, 0.1, 0.9);
            const double p1 = 1.0 - p2;
            const SinrSet s = sinr_set(g1 * 1e5, g1 * 1e4, 1.0, 1.0, p1 * 1e1, p2 * 1e1);
            const double cap_no = std::log2(1.0 + s.x1_without_sic);
            const double cap_sic = std::log2(1.0 + s.x1_with_sic);
            const double r1 = uniform_in(gen, 0.0, cap_sic);
            const double r2 = uniform_in(gen, 0.0, 4.0);
            const U1Error e = effective_error_u1(s.x2_at_u1, s.x1_with_sic, s.x1_without_sic, n,
                                                 r1, r2);

            const double e21 = error_prob(s.x2_at_u1, n, r2);
            const double e11 = error_prob(s.x1_with_sic, n, r1);
            const double e11p = error_prob(s.x1_without_sic, n, r1);
            order_ok = order_ok && e11 <= e11p + 1e-15;
            const double indicator = r1 <= cap_no ? e11p : 1.0;
            const double t1_direct = throughput(r1, e.value);
            const double t1_factored = r1 * (1.0 - e11 + (e11 - indicator) * e21);
            algebra_ok = algebra_ok &&
                         std::abs(t1_direct - t1_factored) <= 1e-12 * std::max(1.0, t1_direct);

            const double snr = s.x2_at_u2;
            mono_ok = mono_ok && error_prob(snr * 2.0, n, r2) <= error_prob(snr, n, r2);
        }
        ck.check(order_ok, "post-cancellation error never exceeds the no-cancellation one");
        ck.check(algebra_ok, "branch form and factored form of the near-user throughput agree");
        ck.check(mono_ok, "error probability decreases with snr");
    }

    // --- placement ---
    {
        bool monotone_ok = true, tangent_ok = true, lower_ok = true;
        bool grad_ok = true, hess_ok = true, clamp_ok = true;
        for (int i = 0; i < 30; ++i)
        {
            UserChannel ch = random_channel(gen);
            const double half = ch.geometry.region_half_width;
            ScaState state = make_sca_state(ch, random_position(gen, half));
            for (int it = 0; it < 25; ++it)
            {
                const ScaState next = sca_step(ch, state);
                monotone_ok = monotone_ok && next.gain >= state.gain - 1e-9;
                state = next;
            }

            tangent_ok = tangent_ok && std::abs(surrogate_objective(state, state.anchor) -
                                                state.gain) <= 1e-9 * std::max(1.0, state.gain);
            for (int k = 0; k < 50; ++k)
            {
                const AntennaPosition u = random_position(gen, half);
                lower_ok = lower_ok && 2.0 * surrogate_objective(state, u) - state.gain <=
                                           gain(ch, u) + 1e-9;
            }

            const AntennaPosition u = random_position(gen, 0.9 * half);
            const double h = 1e-6;
            const Eigen::Vector2d fd{
                (surrogate_objective(state, {u.x + h, u.y}) -
                 surrogate_objective(state, {u.x - h, u.y})) /
                    (2 * h),
                (surrogate_objective(state, {u.x, u.y + h}) -
                 surrogate_objective(state, {u.x, u.y - h})) /
                    (2 * h)};
            const Eigen::Vector2d an = surrogate_gradient(state, u);
            grad_ok = grad_ok && (fd - an).norm() <= 1e-6 * std::max(1.0, an.norm());

            const double hh = 1e-4;
            auto g_at = [&](double x, double y) { return surrogate_objective(state, {x, y}); };
            const double gxx = (g_at(u.x + hh, u.y) - 2 * g_at(u.x, u.y) + g_at(u.x - hh, u.y)) / (hh * hh);
            const double gyy = (g_at(u.x, u.y + hh) - 2 * g_at(u.x, u.y) + g_at(u.x, u.y - hh)) / (hh * hh);
            const double gxy = (g_at(u.x + hh, u.y + hh) - g_at(u.x + hh, u.y - hh) -
                                g_at(u.x - hh, u.y + hh) + g_at(u.x - hh, u.y - hh)) /
                               (4 * hh * hh);
            const double delta = curvature_bound(state);
            hess_ok = hess_ok && spectral_norm_2x2(gxx, gxy, gyy) <= delta * (1.0 + 1e-6) + 1e-9;

            const Eigen::Vector2d grad = surrogate_gradient(state, state.anchor);
            const AntennaPosition stepped = clamp_to_region(
                {state.anchor.x + grad.x() / delta, state.anchor.y + grad.y() / delta}, half);
            auto quad = [&](const AntennaPosition &q) {
                const Eigen::Vector2d qv = q.vec();
                return -0.5 * delta * qv.squaredNorm() +
                       (grad + delta * state.anchor.vec()).dot(qv);
            };
            const double q_star = quad(stepped);
            for (int k = 0; k < 100; ++k)
                clamp_ok = clamp_ok && q_star >= quad(random_position(gen, half)) - 1e-9;
        }
        ck.check(monotone_ok, "ascent gain is monotone across iterations");
        ck.check(tangent_ok, "cosine minorant is tangent at the anchor");
        ck.check(lower_ok, "minorant-based bound stays below the true gain");
        ck.check(grad_ok, "minorant gradient matches central differences");
        ck.check(hess_ok, "curvature bound dominates sampled Hessians");
        ck.check(clamp_ok, "clamped step maximizes the quadratic over the box");
    }

    // --- allocation ---
    {
        bool budget_ok = true, floor_ok = true, fp_ok = true, root_ok = true, dom_ok = true;
        for (int i = 0; i < 15; ++i)
        {
            AllocProblem pb;
            pb.gain1 = std::norm(complex_gaussian(gen)) / 20.0 + 1e-4;
            pb.gain2 = std::norm(complex_gaussian(gen)) / 60.0 + 1e-4;
            if (pb.gain1 < pb.gain2)
                std::swap(pb.gain1, pb.gain2);
            pb.p_max = 1e6;
            pb.blocklength = 100;
            const double reachable = max_throughput(pb.gain2 * pb.p_max / pb.noise2, pb.blocklength);
            pb.t_min = 0.5 * reachable;

            const AllocSolution sol = solve_noma(pb);
            budget_ok = budget_ok && sol.allocation.p1 + sol.allocation.p2 == pb.p_max;
            floor_ok = floor_ok && std::abs(sol.t2 - pb.t_min) <= 1e-6;

            const double snr = pb.gain2 * pb.p_max / pb.noise2;
            const double fp = fixed_point_r2(snr, pb.blocklength, pb.t_min);
            auto resid = [&](double r) {
                return single_link_throughput(snr, pb.blocklength, r) - pb.t_min;
            };
            const double bis = bisect(resid, 0.0, peak_rate(snr, pb.blocklength), 1e-13).x;
            fp_ok = fp_ok && std::abs(fp - bis) <= 1e-8;

            const double pk = peak_rate(snr, pb.blocklength);
            double best_r = 0.0, best_t = -1.0;
            const int m = 20000;
            for (int k = 0; k <= m; ++k)
            {
                const double r = 2.0 * pk * k / m;
                const double t = single_link_throughput(snr, pb.blocklength, r);
                if (t > best_t)
                {
                    best_t = t;
                    best_r = r;
                }
            }
            root_ok = root_ok && std::abs(pk - best_r) <= 2.0 * pk / m + 1e-9;

            for (int k = 0; k < 40; ++k)
            {
                const double p2 = uniform_in(gen, sol.p2_lower, pb.p_max);
                const SinrSet s = sinr_set(pb.gain1, pb.gain2, pb.noise1, pb.noise2,
                                           pb.p_max - p2, p2);
                const double r2 = uniform_in(gen, 0.0, 1.5 * peak_rate(s.x2_at_u2, pb.blocklength));
                if (single_link_throughput(s.x2_at_u2, pb.blocklength, r2) < pb.t_min - 1e-6)
                    continue;
                const double r1 = uniform_in(gen, 0.0, std::log2(1.0 + s.x1_with_sic));
                const U1Error e = effective_error_u1(s.x2_at_u1, s.x1_with_sic,
                                                     s.x1_without_sic, pb.blocklength, r1, r2);
                dom_ok = dom_ok && sol.t1 >= throughput(r1, e.value) - 1e-9;
            }
        }
        ck.check(budget_ok, "power budget is spent exactly");
        ck.check(floor_ok, "far-user floor binds at the solution");
        ck.check(fp_ok, "fixed-point rate matches the bisection root");
        ck.check(root_ok, "stationarity root matches the grid argmax");
        ck.check(dom_ok, "solution dominates random feasible operating points");
    }

    // --- experiments ---
    {
        ExperimentConfig cfg = make_sweep_config(SweepKind::t0);
        cfg.trials = 4;
        cfg.master_seed = derive_seed(seed, 42);
        cfg.grid = {1.0};
        bool det_ok = true, paired_ok = true;
        for (int t = 0; t < cfg.trials; ++t)
        {
            const auto a = run_trial(cfg, t);
            const auto b = run_trial(cfg, t);
            for (std::size_t s = 0; s < a.size(); ++s)
                det_ok = det_ok && a[s].t1 == b[s].t1 && a[s].t2 == b[s].t2 &&
                         a[s].feasible == b[s].feasible;
            const TrialContext ctx = prepare_trial(cfg, t);
            paired_ok = paired_ok && ctx.placement1.gain >= ctx.gain1_fixed - 1e-12 &&
                        ctx.placement2.gain >= ctx.gain2_fixed - 1e-12;
        }
        ck.check(det_ok, "trial outcomes are reproducible");
        ck.check(paired_ok, "optimized placement never loses to the fixed antenna");
    }

    out << (ck.failures == 0 ? "selftest passed" : "selftest FAILED") << " ("
        << ck.failures << " failures)\n";
    return ck.failures;
}

} // namespace manoma

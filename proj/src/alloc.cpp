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

#include "manoma/alloc.hpp"
#include "manoma/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace manoma
{

namespace
{
constexpr double kLn2 = std::numbers::ln2;

// Exceeding the reachable floor by no more than this still counts as the
// boundary instance (the bisections that produce such targets stop at 1e-9).
constexpr double kFeasSlack = 1e-8;

void validate(const AllocProblem &pb)
{
    if (!(pb.gain1 >= 0.0) || !(pb.gain2 >= 0.0))
        throw std::invalid_argument("gains must be nonnegative");
    if (!(pb.noise1 > 0.0) || !(pb.noise2 > 0.0))
        throw std::invalid_argument("noise powers must be positive");
    if (!(pb.p_max > 0.0))
        throw std::invalid_argument("power budget must be positive");
    if (pb.blocklength < 1)
        throw std::invalid_argument("blocklength must be at least 1");
    if (!(pb.t_min >= 0.0))
        throw std::invalid_argument("throughput floor must be nonnegative");
}

double far_user_snr(const AllocProblem &pb, double p2)
{
    return pb.gain2 * p2 / (pb.gain2 * (pb.p_max - p2) + pb.noise2);
}
} // namespace

double stationarity_u(double snr, int blocklength, double rate, UForm form)
{
    if (!(snr > 0.0))
        throw std::domain_error("stationarity is defined for positive snr only");
    const double f = dispersion_f(snr, blocklength, rate);
    const double variance_factor = -std::expm1(-2.0 * std::log1p(snr));
    const double n = static_cast<double>(blocklength);
    const double slope = (form == UForm::analytic)
                             ? rate * kLn2 * std::sqrt(n / variance_factor)
                             : n * rate * kLn2 / std::sqrt(variance_factor);
    return 1.0 - q_function(f) - slope * normal_pdf(f);
}

double single_link_throughput(double snr, int blocklength, double rate)
{
    return throughput(rate, error_prob(snr, blocklength, rate));
}

double peak_rate(double snr, int blocklength, double rate_tol, UForm form)
{
    if (!(snr >= 0.0))
        throw std::invalid_argument("snr must be nonnegative");
    if (snr == 0.0)
        return 0.0;

    auto u = [&](double r) { return stationarity_u(snr, blocklength, r, form); };
    // Positive at zero rate; expand the upper end until the derivative turns.
    double hi = std::max(std::log1p(snr) / kLn2, 1e-3);
    int doublings = 0;
    while (u(hi) > 0.0)
    {
        hi *= 2.0;
        if (++doublings > 64)
            throw std::runtime_error("single-link throughput has no interior maximum");
    }
    return bisect(u, 0.0, hi, rate_tol).x;
}

double max_throughput(double snr, int blocklength, double rate_tol)
{
    return single_link_throughput(snr, blocklength, peak_rate(snr, blocklength, rate_tol));
}

FixedPointResult fixed_point_r2_ex(double snr, int blocklength, double t_target, double tol,
                                   int max_iter)
{
    if (!(t_target >= 0.0))
        throw std::invalid_argument("target throughput must be nonnegative");
    if (t_target == 0.0)
        return {0.0, 0, false};

    const double rate_pk = peak_rate(snr, blocklength);
    const double t_max = single_link_throughput(snr, blocklength, rate_pk);
    if (t_max < t_target)
    {
        if (t_target - t_max > kFeasSlack)
            throw InfeasibleError("target throughput exceeds the reachable maximum", t_max);
        return {rate_pk, 0, false}; // boundary instance: the floor binds exactly
    }

    double rate = t_target; // 1 - eps < 1, so the true rate lies above the target
    double prev_step = 0.0;
    for (int it = 1; it <= max_iter; ++it)
    {
        const double denom = 1.0 - error_prob(snr, blocklength, rate);
        if (denom < 1e-12)
            break;
        double next = t_target / denom;
        const double step = next - rate;
        if (prev_step != 0.0 && std::signbit(step) != std::signbit(prev_step))
            next = rate + 0.5 * step;
        prev_step = next - rate;
        rate = next;
        if (std::abs(single_link_throughput(snr, blocklength, rate) - t_target) <= tol)
            return {rate, it, false};
        if (rate > rate_pk)
            break; // overshot the rising branch; the smaller root is behind us
    }

    // Guaranteed-termination fallback: the smaller root lies on the rising
    // branch [0, rate_pk], where the residual brackets.
    auto residual = [&](double r) { return single_link_throughput(snr, blocklength, r) - t_target; };
    const RootResult root = bisect(residual, 0.0, rate_pk, 1e-13 * std::max(1.0, rate_pk), 200);
    return {root.x, max_iter + root.iterations, true};
}

double fixed_point_r2(double snr, int blocklength, double t_target, double tol, int max_iter)
{
    return fixed_point_r2_ex(snr, blocklength, t_target, tol, max_iter).rate;
}

R1Solution optimal_r1(const SinrSet &sinrs, int blocklength, double r2, double rate_tol)
{
    if (!(sinrs.x1_with_sic > 0.0))
        return {0.0, 0.0, SicBranch::no_sic_ok}; // no power (or no channel) for the near user

    const double cap_sic = std::log1p(sinrs.x1_with_sic) / kLn2;
    const double cap_no_sic = std::log1p(sinrs.x1_without_sic) / kLn2;
    const double e2_at_u1 = error_prob(sinrs.x2_at_u1, blocklength, r2);

    std::vector<double> candidates{cap_no_sic, cap_sic};

    // Below the no-cancellation capacity the derivative mixes both branches
    // of the conditional decode, weighted by the cancellation outcome.
    if (cap_no_sic > 0.0)
    {
        auto mixed = [&](double r) {
            return (1.0 - e2_at_u1) * stationarity_u(sinrs.x1_with_sic, blocklength, r) +
                   e2_at_u1 * stationarity_u(sinrs.x1_without_sic, blocklength, r);
        };
        if (mixed(cap_no_sic) <= 0.0)
            candidates.push_back(bisect(mixed, 0.0, cap_no_sic, rate_tol).x);
        // No sign change: the maximum sits at an endpoint, both of which are
        // evaluated below anyway.
    }
    if (cap_sic > cap_no_sic)
    {
        auto plain = [&](double r) { return stationarity_u(sinrs.x1_with_sic, blocklength, r); };
        if (plain(cap_no_sic) > 0.0 && plain(cap_sic) <= 0.0)
            candidates.push_back(bisect(plain, cap_no_sic, cap_sic, rate_tol).x);
    }

    R1Solution best{0.0, 0.0, SicBranch::no_sic_ok};
    for (double candidate : candidates)
    {
        const double r1 = std::clamp(candidate, 0.0, cap_sic);
        const U1Error err = effective_error_u1(sinrs.x2_at_u1, sinrs.x1_with_sic,
                                               sinrs.x1_without_sic, blocklength, r1, r2);
        const double t1 = throughput(r1, err.value);
        if (t1 > best.t1)
            best = {r1, t1, err.branch};
    }
    return best;
}

double p2_lower_bound(const AllocProblem &pb, double tol)
{
    validate(pb);
    if (pb.t_min <= 0.0)
        return 0.0;

    auto reachable = [&](double p2) { return max_throughput(far_user_snr(pb, p2), pb.blocklength); };
    const double top = reachable(pb.p_max);
    if (top < pb.t_min)
        throw InfeasibleError("floor unreachable even with the whole budget", top);
    if (top == pb.t_min)
        return pb.p_max;

    // reachable(p2) - t_min is strictly increasing: negative at zero power,
    // nonnegative at the full budget.
    double lo = 0.0;
    double hi = pb.p_max;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        const double excess = reachable(mid) - pb.t_min;
        if (std::abs(excess) <= tol)
            return mid;
        (excess < 0.0 ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * pb.p_max)
            break;
    }
    return hi; // smallest power known to reach the floor
}

namespace
{
struct PowerProbe
{
    double p2 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    SicBranch branch = SicBranch::no_sic_ok;
};

PowerProbe probe_power(const AllocProblem &pb, double p2, const SearchConfig &cfg)
{
    const double p1 = pb.p_max - p2;
    const SinrSet sinrs = sinr_set(pb.gain1, pb.gain2, pb.noise1, pb.noise2, p1, p2);
    double r2 = 0.0;
    if (pb.t_min > 0.0)
        r2 = fixed_point_r2(sinrs.x2_at_u2, pb.blocklength, pb.t_min, cfg.fp_tol,
                            cfg.max_fixed_point_iter);
    const double t2 = single_link_throughput(sinrs.x2_at_u2, pb.blocklength, r2);
    const R1Solution r1 = optimal_r1(sinrs, pb.blocklength, r2, cfg.rate_tol);
    return {p2, r1.rate, r2, r1.t1, t2, r1.branch};
}

AllocSolution assemble(const AllocProblem &pb, const PowerProbe &best, double p2_lower,
                       int evaluations, bool fixed_p2)
{
    AllocSolution sol;
    sol.allocation = {pb.p_max - best.p2, best.p2, best.r1, best.r2, pb.blocklength};
    sol.t1 = best.t1;
    sol.t2 = best.t2;
    sol.p2_lower = p2_lower;
    sol.diagnostics.objective_evaluations = evaluations;
    sol.diagnostics.r1_branch = best.branch;
    sol.diagnostics.fixed_p2 = fixed_p2;
    return sol;
}
} // namespace

AllocSolution solve_noma(const AllocProblem &pb, const SearchConfig &cfg)
{
    validate(pb);
    const double p2_lo = p2_lower_bound(pb);
    const double p2_hi = pb.p_max;
    int evaluations = 0;

    PowerProbe best;
    best.t1 = -1.0;
    auto evaluate = [&](double p2) {
        ++evaluations;
        const PowerProbe probe = probe_power(pb, p2, cfg);
        if (probe.t1 > best.t1)
            best = probe;
        return probe.t1;
    };

    const double range = p2_hi - p2_lo;
    if (range <= 1e-12 * pb.p_max)
    {
        evaluate(p2_hi);
        return assemble(pb, best, p2_lo, evaluations, false);
    }

    // Linear pre-scan brackets the global maximum; the objective is smooth
    // but not certified unimodal over the whole admissible range.
    const int m = std::max(cfg.prescan_points, 3);
    int best_index = 0;
    double best_scan = -1.0;
    for (int i = 0; i < m; ++i)
    {
        const double p2 = p2_lo + range * i / (m - 1);
        const double t1 = evaluate(p2);
        if (t1 > best_scan)
        {
            best_scan = t1;
            best_index = i;
        }
    }
    const double bracket_lo = p2_lo + range * std::max(best_index - 1, 0) / (m - 1);
    const double bracket_hi = p2_lo + range * std::min(best_index + 1, m - 1) / (m - 1);
    const double width_tol = std::max(cfg.p2_tol_rel * range, 1e-12 * pb.p_max);
    const double mid = golden_section_max(evaluate, bracket_lo, bracket_hi, width_tol);
    evaluate(mid);

    return assemble(pb, best, p2_lo, evaluations, false);
}

AllocSolution solve_noma_fixed_p2(const AllocProblem &pb, double p2, const SearchConfig &cfg)
{
    validate(pb);
    if (!(p2 >= 0.0) || !(p2 <= pb.p_max))
        throw std::invalid_argument("fixed p2 must lie in [0, p_max]");
    const PowerProbe probe = probe_power(pb, p2, cfg); // throws if the floor is unreachable
    AllocSolution sol = assemble(pb, probe, p2, 1, true);
    return sol;
}

AllocSolution solve_oma(const AllocProblem &pb, const SearchConfig &cfg)
{
    validate(pb);
    if (pb.blocklength < 2)
        throw std::invalid_argument("a slotted split needs at least 2 channel uses");

    const double snr1 = pb.p_max * pb.gain1 / pb.noise1;
    const double snr2 = pb.p_max * pb.gain2 / pb.noise2;
    const int n = pb.blocklength;

    bool found = false;
    PowerProbe best;
    best.t1 = -1.0;
    int best_n2 = 0;
    double best_reachable_floor = 0.0;

    for (int n2 = 1; n2 < n; ++n2)
    {
        const int n1 = n - n2;
        const double frac2 = static_cast<double>(n2) / n;
        double r2 = 0.0;
        double t2 = 0.0;
        if (pb.t_min > 0.0)
        {
            // The floor applies across the whole block, so the in-slot
            // product has to reach t_min / frac2.
            const double target = pb.t_min / frac2;
            const double rate_pk = peak_rate(snr2, n2, cfg.rate_tol);
            const double t_max = single_link_throughput(snr2, n2, rate_pk);
            best_reachable_floor = std::max(best_reachable_floor, frac2 * t_max);
            if (t_max < target - kFeasSlack)
                continue;
            r2 = (t_max <= target)
                     ? rate_pk
                     : fixed_point_r2(snr2, n2, target, cfg.fp_tol, cfg.max_fixed_point_iter);
            t2 = frac2 * single_link_throughput(snr2, n2, r2);
        }
        const double r1 = peak_rate(snr1, n1, cfg.rate_tol);
        const double t1 =
            static_cast<double>(n1) / n * single_link_throughput(snr1, n1, r1);
        if (t1 > best.t1)
        {
            best = {pb.p_max, r1, r2, t1, t2, SicBranch::no_sic_ok};
            best_n2 = n2;
            found = true;
        }
    }
    if (!found)
        throw InfeasibleError("no slot split reaches the floor", best_reachable_floor);

    AllocSolution sol;
    sol.allocation = {pb.p_max, pb.p_max, best.r1, best.r2, n};
    sol.t1 = best.t1;
    sol.t2 = best.t2;
    sol.p2_lower = 0.0;
    sol.diagnostics.objective_evaluations = n - 1;
    sol.diagnostics.oma_slot_u1 = n - best_n2;
    sol.diagnostics.oma_slot_u2 = best_n2;
    return sol;
}

} // namespace manoma

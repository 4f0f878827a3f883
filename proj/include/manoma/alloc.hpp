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
// Power and rate allocation at the access point. The near user's throughput
// is maximized over (P1, P2, R1, R2) subject to the power budget and a
// throughput floor for the far user: the far user's rate comes from a
// fixed-point solve of the floor equality, the near user's rate from the
// stationarity roots of its piecewise throughput, the admissible power
// range from a monotone bisection, and the remaining scalar power search
// from a prescan plus golden section. A slotted (TDMA) baseline allocator
// with the same contract is included.

#ifndef manoma_alloc_H
#define manoma_alloc_H

#include <stdexcept>
#include <string>

#include "manoma/fbl.hpp"

namespace manoma
{

// One two-user allocation instance at fixed channel gains.
struct AllocProblem
{
    double gain1 = 0.0;  // near (core) user channel gain
    double gain2 = 0.0;  // far (edge) user channel gain
    double noise1 = 1.0;
    double noise2 = 1.0;
    double p_max = 1.0;  // power budget, linear
    int blocklength = 100;
    double t_min = 0.0;  // far user's throughput floor (T0)
};

struct SearchConfig
{
    int prescan_points = 64;    // linear pre-scan before golden section
    double p2_tol_rel = 1e-9;   // golden-section width, relative to the range
    double rate_tol = 1e-10;    // bisection tolerance on rates, absolute
    double fp_tol = 1e-10;      // fixed-point residual tolerance on throughput
    int max_fixed_point_iter = 100;
};

// Thrown when no allocation can reach the far user's floor; carries the
// best floor value that was reachable.
class InfeasibleError : public std::runtime_error
{
  public:
    InfeasibleError(const std::string &what, double max_achievable)
        : std::runtime_error(what), max_achievable_(max_achievable)
    {
    }
    double max_achievable() const { return max_achievable_; }

  private:
    double max_achievable_;
};

// Derivative of R * (1 - Q(f(snr, N, R))) with respect to R. `analytic` is
// the correctly differentiated form (its root is the single-link rate
// optimum); `as_printed` reproduces a variant that scales the density term
// by N instead of sqrt(N), kept only for side-by-side comparison.
enum class UForm
{
    analytic,
    as_printed,
};

double stationarity_u(double snr, int blocklength, double rate, UForm form = UForm::analytic);

// Single-link effective throughput R * (1 - Q(f)).
double single_link_throughput(double snr, int blocklength, double rate);

// Rate maximizing the single-link throughput: the stationarity root,
// bracketed and bisected. Returns 0 for a zero-gain link.
double peak_rate(double snr, int blocklength, double rate_tol = 1e-10,
                 UForm form = UForm::analytic);

// Largest reachable single-link throughput at this snr and blocklength.
double max_throughput(double snr, int blocklength, double rate_tol = 1e-10);

struct FixedPointResult
{
    double rate = 0.0;
    int iterations = 0;
    bool used_bisection = false;
};

// Smallest rate whose effective throughput equals t_target, found by the
// fixed-point iteration R := t_target / (1 - eps(R)) seeded at t_target,
// with 0.5 damping on oscillation and a bracketed-bisection fallback.
// Throws InfeasibleError when the target exceeds the reachable maximum.
FixedPointResult fixed_point_r2_ex(double snr, int blocklength, double t_target,
                                   double tol = 1e-10, int max_iter = 100);
double fixed_point_r2(double snr, int blocklength, double t_target, double tol = 1e-10,
                      int max_iter = 100);

struct R1Solution
{
    double rate = 0.0;
    double t1 = 0.0;
    SicBranch branch = SicBranch::no_sic_ok;
};

// Near-user rate maximizing its effective throughput at fixed powers and
// fixed far-user rate. Candidate roots are sought in both branch regions
// (the mixed stationarity equation below the no-cancellation capacity, the
// plain one above it); the region boundary and endpoints are always
// evaluated, and the best candidate wins.
R1Solution optimal_r1(const SinrSet &sinrs, int blocklength, double r2,
                      double rate_tol = 1e-10);

// Smallest far-user power able to reach the floor when paired with the
// rate-optimal far-user rate. Monotone bisection on the power; the
// reachable maximum at the returned power matches t_min to within tol.
double p2_lower_bound(const AllocProblem &problem, double tol = 1e-9);

struct AllocDiagnostics
{
    int objective_evaluations = 0;
    SicBranch r1_branch = SicBranch::no_sic_ok;
    bool fixed_p2 = false;
    int oma_slot_u1 = 0; // channel uses granted to each user; zero when
    int oma_slot_u2 = 0; // the solve is a superposition (non-slotted) one
};

struct AllocSolution
{
    NomaAllocation allocation;
    double t1 = 0.0;
    double t2 = 0.0;
    double p2_lower = 0.0;
    AllocDiagnostics diagnostics;
};

// Full allocation solve: power split search over [p2_lower, p_max] with
// P1 + P2 = p_max, far-user rate pinned to the floor, near-user rate from
// its stationarity roots. Throws InfeasibleError when the floor is out of
// reach altogether.
AllocSolution solve_noma(const AllocProblem &problem, const SearchConfig &config = {});

// Same solve with the far user's power held at the given value; only the
// rates are optimized. Used by the fixed-power sweep.
AllocSolution solve_noma_fixed_p2(const AllocProblem &problem, double p2,
                                  const SearchConfig &config = {});

// Slotted baseline: the block is split N = N1 + N2, each user served alone
// in its slot at full power. Exhaustive search over the integer split;
// per split the far user's rate meets the floor exactly and the near
// user's rate is the single-link optimum.
AllocSolution solve_oma(const AllocProblem &problem, const SearchConfig &config = {});

} // namespace manoma

#endif

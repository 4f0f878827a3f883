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
// Small derivative-free 1-D search helpers used by the allocator.

#ifndef manoma_roots_H
#define manoma_roots_H

#include <cmath>
#include <stdexcept>
#include <utility>

namespace manoma
{

struct RootResult
{
    double x = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Bracketed bisection. f(lo) and f(hi) must have opposite signs (either may
// be zero). Stops once the bracket width drops below x_tol.
template <class F>
RootResult bisect(F &&f, double lo, double hi, double x_tol, int max_iter = 200)
{
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return {lo, 0, true};
    if (fhi == 0.0)
        return {hi, 0, true};
    if (std::signbit(flo) == std::signbit(fhi))
        throw std::invalid_argument("bisect: endpoints do not bracket a root");

    RootResult r;
    for (r.iterations = 0; r.iterations < max_iter; ++r.iterations)
    {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0)
        {
            r.x = mid;
            r.converged = true;
            return r;
        }
        if (std::signbit(fmid) == std::signbit(flo))
        {
            lo = mid;
            flo = fmid;
        }
        else
            hi = mid;
        if (hi - lo <= x_tol)
        {
            r.converged = true;
            break;
        }
    }
    r.x = 0.5 * (lo + hi);
    return r;
}

// Golden-section maximization on [lo, hi]. Assumes the caller already
// bracketed the maximum; returns the interval midpoint once the interval
// width drops below x_tol. Every probe goes through f, so a caller that
// keeps its own best-seen record loses nothing to the final midpoint.
template <class F>
double golden_section_max(F &&f, double lo, double hi, double x_tol, int max_iter = 200)
{
    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5)-1)/2
    double c = hi - (hi - lo) * inv_phi;
    double d = lo + (hi - lo) * inv_phi;
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && (hi - lo) > x_tol; ++i)
    {
        if (fc > fd)
        {
            hi = d;
            d = c;
            fd = fc;
            c = hi - (hi - lo) * inv_phi;
            fc = f(c);
        }
        else
        {
            lo = c;
            c = d;
            fc = fd;
            d = lo + (hi - lo) * inv_phi;
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace manoma

#endif

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

#include "manoma/fbl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace manoma
{

namespace
{
constexpr double kLn2 = std::numbers::ln2;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kInvSqrt2Pi = 0.3989422804014326779; // 1/sqrt(2*pi)

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void check_args(double snr, int blocklength, double rate)
{
    if (!(snr >= 0.0))
        throw std::invalid_argument("snr must be nonnegative");
    if (blocklength < 1)
        throw std::invalid_argument("blocklength must be at least 1");
    if (!(rate >= 0.0))
        throw std::invalid_argument("rate must be nonnegative");
}
} // namespace

double q_function(double x)
{
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double normal_pdf(double x)
{
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double dispersion_f(double snr, int blocklength, double rate)
{
    check_args(snr, blocklength, rate);
    if (snr == 0.0)
        return rate > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
    // 1 - (1+snr)^-2 without cancellation at tiny snr.
    const double variance_factor = -std::expm1(-2.0 * std::log1p(snr));
    const double rate_margin = std::log1p(snr) / kLn2 - rate;
    return kLn2 * std::sqrt(static_cast<double>(blocklength) / variance_factor) * rate_margin;
}

double error_prob(double snr, int blocklength, double rate)
{
    return clamp01(q_function(dispersion_f(snr, blocklength, rate)));
}

SinrSet sinr_set(double gain1, double gain2, double noise1, double noise2, double p1, double p2)
{
    if (!(gain1 >= 0.0) || !(gain2 >= 0.0))
        throw std::invalid_argument("gains must be nonnegative");
    if (!(noise1 > 0.0) || !(noise2 > 0.0))
        throw std::invalid_argument("noise powers must be positive");
    if (!(p1 >= 0.0) || !(p2 >= 0.0))
        throw std::invalid_argument("powers must be nonnegative");
    SinrSet s;
    s.x2_at_u1 = gain1 * p2 / (gain1 * p1 + noise1);
    s.x1_with_sic = gain1 * p1 / noise1;
    s.x1_without_sic = gain1 * p1 / (gain1 * p2 + noise1);
    s.x2_at_u2 = gain2 * p2 / (gain2 * p1 + noise2);
    return s;
}

SinrSet sinr_set(double gain1, double gain2, double noise1, double noise2,
                 const NomaAllocation &alloc)
{
    return sinr_set(gain1, gain2, noise1, noise2, alloc.p1, alloc.p2);
}

U1Error effective_error_u1(double snr_x2_at_u1, double snr_with_sic, double snr_without_sic,
                           int blocklength, double r1, double r2)
{
    const double cap_sic = std::log1p(snr_with_sic) / kLn2;
    const double cap_no_sic = std::log1p(snr_without_sic) / kLn2;
    if (r1 > cap_sic + 1e-9)
        throw std::domain_error("r1 exceeds the post-cancellation capacity; "
                                "the error model is undefined there");

    const double e2_at_u1 = error_prob(snr_x2_at_u1, blocklength, r2);
    const double e1_sic = error_prob(snr_with_sic, blocklength, r1);
    if (r1 <= cap_no_sic)
    {
        const double e1_no_sic = error_prob(snr_without_sic, blocklength, r1);
        return {clamp01(e1_sic * (1.0 - e2_at_u1) + e1_no_sic * e2_at_u1), SicBranch::no_sic_ok};
    }
    return {clamp01(e1_sic * (1.0 - e2_at_u1) + e2_at_u1), SicBranch::sic_required};
}

double throughput(double rate, double error_probability)
{
    if (!(error_probability >= 0.0) || !(error_probability <= 1.0))
        throw std::invalid_argument("error probability must lie in [0, 1]");
    return rate * (1.0 - error_probability);
}

LinkErrorProfile link_errors(double gain1, double gain2, double noise1, double noise2,
                             const NomaAllocation &alloc)
{
    const SinrSet s = sinr_set(gain1, gain2, noise1, noise2, alloc);
    LinkErrorProfile prof;
    prof.e2_at_u1 = error_prob(s.x2_at_u1, alloc.blocklength, alloc.r2);
    prof.e1_with_sic = error_prob(s.x1_with_sic, alloc.blocklength, alloc.r1);
    prof.e1_without_sic = error_prob(s.x1_without_sic, alloc.blocklength, alloc.r1);
    const U1Error u1 = effective_error_u1(s.x2_at_u1, s.x1_with_sic, s.x1_without_sic,
                                          alloc.blocklength, alloc.r1, alloc.r2);
    prof.e1 = u1.value;
    prof.branch = u1.branch;
    prof.e2 = error_prob(s.x2_at_u2, alloc.blocklength, alloc.r2);
    return prof;
}

ThroughputPair throughput_pair(double gain1, double gain2, double noise1, double noise2,
                               const NomaAllocation &alloc)
{
    const LinkErrorProfile prof = link_errors(gain1, gain2, noise1, noise2, alloc);
    return {throughput(alloc.r1, prof.e1), throughput(alloc.r2, prof.e2)};
}

} // namespace manoma

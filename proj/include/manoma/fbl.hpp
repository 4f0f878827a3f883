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
// Normal-approximation error probability and effective throughput for the
// two-user power-domain downlink: Q-function, channel-dispersion argument,
// SINR bookkeeping and the SIC-aware error combination at the near user.

#ifndef manoma_fbl_H
#define manoma_fbl_H

namespace manoma
{

// Power/rate operating point of one two-user transmission block.
struct NomaAllocation
{
    double p1 = 0.0; // power for the near (core) user, linear
    double p2 = 0.0; // power for the far (edge) user, linear
    double r1 = 0.0; // bits per channel use
    double r2 = 0.0; // bits per channel use
    int blocklength = 100;
};

// Standard normal tail probability Q(x), via the complementary error
// function.
double q_function(double x);

// Standard normal density at x.
double normal_pdf(double x);

// Dispersion argument f(snr, N, R) = ln2 * sqrt(N / (1-(1+snr)^-2)) *
// (log2(1+snr) - R) whose Q-value approximates the block error probability.
// Total on snr >= 0: snr == 0 with R > 0 returns -infinity (a useless
// channel decodes at error probability 1); snr == 0 with R == 0 returns 0,
// the continuous limit. The variance factor is evaluated through
// expm1/log1p so tiny snr values lose no precision.
double dispersion_f(double snr, int blocklength, double rate);

// Block decoding error probability Q(f(snr, N, R)), clamped to [0, 1].
// Strictly decreasing in snr.
double error_prob(double snr, int blocklength, double rate);

// The four SINRs of the two-user superposition at fixed powers:
// the far user's symbol seen at the near user, the near user's symbol after
// successful cancellation, the same without cancellation, and the far
// user's symbol at its own receiver.
struct SinrSet
{
    double x2_at_u1 = 0.0;      // g1*p2 / (g1*p1 + n1)
    double x1_with_sic = 0.0;   // g1*p1 / n1
    double x1_without_sic = 0.0; // g1*p1 / (g1*p2 + n1)
    double x2_at_u2 = 0.0;      // g2*p2 / (g2*p1 + n2)
};

SinrSet sinr_set(double gain1, double gain2, double noise1, double noise2, double p1, double p2);
SinrSet sinr_set(double gain1, double gain2, double noise1, double noise2,
                 const NomaAllocation &alloc);

// Which regime the near user's rate falls in: below the no-cancellation
// capacity the near user can still decode its own symbol after a failed
// cancellation; above it a failed cancellation loses the block.
enum class SicBranch
{
    no_sic_ok,
    sic_required,
};

struct U1Error
{
    double value = 1.0;
    SicBranch branch = SicBranch::no_sic_ok;
};

// Effective decoding error probability at the near user, combining the
// cancellation attempt on the far user's symbol with the conditional
// decoding of its own. Requires r1 <= log2(1 + snr_with_sic); throws
// std::domain_error beyond that.
U1Error effective_error_u1(double snr_x2_at_u1, double snr_with_sic, double snr_without_sic,
                           int blocklength, double r1, double r2);

// Effective throughput R * (1 - eps), bits per channel use.
double throughput(double rate, double error_probability);

// All error probabilities of one operating point, plus the branch taken.
struct LinkErrorProfile
{
    double e2_at_u1 = 1.0;      // far symbol at the near user
    double e1_with_sic = 1.0;   // near symbol, cancellation succeeded
    double e1_without_sic = 1.0; // near symbol, cancellation failed
    double e1 = 1.0;            // effective, near user
    double e2 = 1.0;            // effective, far user
    SicBranch branch = SicBranch::no_sic_ok;
};

LinkErrorProfile link_errors(double gain1, double gain2, double noise1, double noise2,
                             const NomaAllocation &alloc);

struct ThroughputPair
{
    double t1 = 0.0;
    double t2 = 0.0;
};

// Effective throughputs of both users at one operating point.
ThroughputPair throughput_pair(double gain1, double gain2, double noise1, double noise2,
                               const NomaAllocation &alloc);

} // namespace manoma

#endif

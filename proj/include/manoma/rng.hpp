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

#ifndef manoma_rng_H
#define manoma_rng_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace manoma
{

// SplitMix64 mixing step (Steele et al.). Advances the state and returns
// the next output word.
inline std::uint64_t splitmix64_next(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless derivation of an independent substream seed from a master seed
// and a stream index. Used to give every Monte Carlo trial its own engine so
// results do not depend on execution order or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    std::uint64_t x = master;
    std::uint64_t h = splitmix64_next(x);
    x = h ^ (0x9e3779b97f4a7c15ULL * (stream + 1ULL));
    return splitmix64_next(x);
}

// Uniform double in [0, 1) with 53 random mantissa bits.
inline double uniform_unit(std::mt19937_64 &gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double uniform_in(std::mt19937_64 &gen, double lo, double hi)
{
    return lo + (hi - lo) * uniform_unit(gen);
}

// Standard circularly symmetric complex Gaussian sample, unit variance
// (real and imaginary parts each N(0, 1/2)). Magnitude-phase form keeps the
// draw sequence identical across standard library implementations.
inline std::complex<double> complex_gaussian(std::mt19937_64 &gen)
{
    double u1 = uniform_unit(gen);
    double u2 = uniform_unit(gen);
    double mag = std::sqrt(-std::log1p(-u1));
    double phase = 2.0 * M_PI * u2;
    return {mag * std::cos(phase), mag * std::sin(phase)};
}

} // namespace manoma

#endif

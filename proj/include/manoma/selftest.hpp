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

#ifndef manoma_selftest_H
#define manoma_selftest_H

#include <cstdint>
#include <ostream>

namespace manoma
{

// Runs the library's invariant suites (channel bounds, error algebra,
// ascent monotonicity, allocator feasibility, determinism) on randomized
// instances, printing one line per suite. Returns the number of failures.
int run_selftest(std::uint64_t seed, std::ostream &out);

} // namespace manoma

#endif

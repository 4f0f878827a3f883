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

#ifndef manoma_report_H
#define manoma_report_H

#include <string>
#include <vector>

#include "manoma/experiments.hpp"

namespace manoma
{

// Locale-independent shortest-faithful decimal rendering used everywhere a
// number ends up in a file.
std::string format_number(double value);

// CSV with the fixed header
//   sweep_value,scheme,mean_t1,stderr_t1,mean_t2,feasible_rate,trials
// one row per (grid value, scheme), '\n' line ends, no locale formatting.
std::string to_csv(const std::vector<SweepRow> &rows);

// Self-contained SVG line chart of mean T1 versus the sweep value, one
// series per scheme. Purely a convenience; the CSV is the contract.
std::string render_svg(const std::vector<SweepRow> &rows, const std::string &title,
                       const std::string &x_label);

} // namespace manoma

#endif

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

#include "manoma/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace manoma
{

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string to_csv(const std::vector<SweepRow> &rows)
{
    std::string out = "sweep_value,scheme,mean_t1,stderr_t1,mean_t2,feasible_rate,trials\n";
    for (const SweepRow &row : rows)
    {
        out += format_number(row.sweep_value);
        out += ',';
        out += scheme_name(row.scheme);
        out += ',';
        out += format_number(row.mean_t1);
        out += ',';
        out += format_number(row.stderr_t1);
        out += ',';
        out += format_number(row.mean_t2);
        out += ',';
        out += format_number(row.feasible_rate);
        out += ',';
        out += std::to_string(row.trials);
        out += '\n';
    }
    return out;
}

namespace
{
const char *scheme_color(Scheme s)
{
    switch (s)
    {
    case Scheme::ma_noma:
        return "#1f77b4";
    case Scheme::fpa_noma:
        return "#ff7f0e";
    case Scheme::ma_oma:
        return "#2ca02c";
    case Scheme::fpa_oma:
        return "#d62728";
    }
    return "#000000";
}

struct Series
{
    Scheme scheme;
    std::vector<std::pair<double, double>> points;
};
} // namespace

std::string render_svg(const std::vector<SweepRow> &rows, const std::string &title,
                       const std::string &x_label)
{
    const double width = 760, height = 500;
    const double ml = 70, mr = 170, mt = 48, mb = 56;
    const double pw = width - ml - mr, ph = height - mt - mb;

    std::vector<Series> series;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool have_point = false;
    for (const SweepRow &row : rows)
    {
        if (std::isnan(row.mean_t1))
            continue;
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const Series &s) { return s.scheme == row.scheme; });
        if (it == series.end())
        {
            series.push_back({row.scheme, {}});
            it = series.end() - 1;
        }
        it->points.emplace_back(row.sweep_value, row.mean_t1);
        if (!have_point)
        {
            x_min = x_max = row.sweep_value;
            y_min = y_max = row.mean_t1;
            have_point = true;
        }
        x_min = std::min(x_min, row.sweep_value);
        x_max = std::max(x_max, row.sweep_value);
        y_min = std::min(y_min, row.mean_t1);
        y_max = std::max(y_max, row.mean_t1);
    }
    if (x_max == x_min)
    {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max == y_min)
    {
        y_min -= 0.5;
        y_max += 0.5;
    }
    const double y_pad = 0.06 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    auto py = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"26\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // gridlines and ticks
    const int n_ticks = 5;
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= n_ticks; ++i)
    {
        const double xv = x_min + (x_max - x_min) * i / n_ticks;
        const double yv = y_min + (y_max - y_min) * i / n_ticks;
        svg << "<line x1=\"" << px(xv) << "\" y1=\"" << mt << "\" x2=\"" << px(xv) << "\" y2=\""
            << mt + ph << "\" stroke=\"#e0e0e0\"/>\n"
            << "<line x1=\"" << ml << "\" y1=\"" << py(yv) << "\" x2=\"" << ml + pw << "\" y2=\""
            << py(yv) << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << px(xv) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\">" << format_number(std::round(xv * 1e6) / 1e6)
            << "</text>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\">" << format_number(std::round(yv * 1e3) / 1e3)
            << "</text>\n";
    }
    svg << "</g>\n"
        << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n"
        << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n"
        << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">mean T1 (bits/channel use)"
        << "</text>\n";

    double legend_y = mt + 12;
    for (const Series &s : series)
    {
        const char *color = scheme_color(s.scheme);
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto &[x, y] : s.points)
            svg << px(x) << "," << py(y) << " ";
        svg << "\"/>\n";
        for (const auto &[x, y] : s.points)
            svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\""
                << color << "\"/>\n";
        svg << "<line x1=\"" << ml + pw + 14 << "\" y1=\"" << legend_y << "\" x2=\""
            << ml + pw + 40 << "\" y2=\"" << legend_y << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << ml + pw + 46 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << scheme_name(s.scheme)
            << "</text>\n";
        legend_y += 20;
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace manoma

// Copyright 2026 The ICL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace icl::cli {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;

    bool drawable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
    double map(double v) const { return log ? std::log10(v) : v; }
    double fraction(double v) const { return (map(v) - lo) / (hi - lo); }
};

Axis fit_axis(bool log, const std::vector<double>& values) {
    Axis axis;
    axis.log = log;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        if (axis.drawable(v)) {
            lo = std::min(lo, axis.map(v));
            hi = std::max(hi, axis.map(v));
        }
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (log) {
        lo = std::floor(lo);
        hi = std::max(std::ceil(hi), lo + 1.0);
    } else {
        lo = std::min(lo, 0.0);
        if (hi <= lo) {
            hi = lo + 1.0;
        }
    }
    axis.lo = lo;
    axis.hi = hi;
    return axis;
}

std::vector<double> ticks(const Axis& axis) {
    std::vector<double> out;
    if (axis.log) {
        for (double e = axis.lo; e <= axis.hi + 1e-9; e += 1.0) {
            out.push_back(e);
        }
    } else {
        for (int k = 0; k <= 5; ++k) {
            out.push_back(axis.lo + (axis.hi - axis.lo) * k / 5.0);
        }
    }
    return out;
}

std::string tick_label(const Axis& axis, double t) {
    return axis.log ? fmt::format("1e{:.0f}", t) : fmt::format("{:.3g}", t);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace

std::string LinePlot::render() const {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const Series& s : series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    Axis ax = fit_axis(log_x, xs);
    Axis ay = fit_axis(log_y, ys);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + pw * ax.fraction(v); };
    auto py = [&](double v) { return kTop + ph * (1.0 - ay.fraction(v)); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} "
        "{1:.0f}\" font-family=\"sans-serif\" font-size=\"13\">\n",
        kWidth, kHeight);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += fmt::format("<text x=\"{:.1f}\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
                       kLeft + pw / 2.0, escape(title));
    out += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n",
                       kLeft, kTop, pw, ph);

    for (double t : ticks(ax)) {
        double x = kLeft + pw * (t - ax.lo) / (ax.hi - ax.lo);
        out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#dddddd\"/>\n", x,
                           kTop, kTop + ph);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", x, kTop + ph + 18.0,
                           tick_label(ax, t));
    }
    for (double t : ticks(ay)) {
        double y = kTop + ph * (1.0 - (t - ay.lo) / (ay.hi - ay.lo));
        out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#dddddd\"/>\n",
                           kLeft, y, kLeft + pw);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6.0, y + 4.0,
                           tick_label(ay, t));
    }
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2.0,
                       kHeight - 15.0, escape(x_label));
    out += fmt::format(
        "<text x=\"20\" y=\"{0:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0:.1f})\">{1}</text>\n",
        kTop + ph / 2.0, escape(y_label));

    for (std::size_t k = 0; k < series.size(); ++k) {
        const Series& s = series[k];
        std::string dash = s.dashed ? " stroke-dasharray=\"8 5\"" : "";
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{} points=\"{}\"/>\n",
                                   s.color, dash, points);
                points.clear();
            }
        };
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!ax.drawable(s.x[i]) || !ay.drawable(s.y[i])) {
                flush();
                continue;
            }
            if (!points.empty()) {
                points += ' ';
            }
            points += fmt::format("{:.2f},{:.2f}", px(s.x[i]), py(s.y[i]));
        }
        flush();
        double ly = kTop + 20.0 + 22.0 * static_cast<double>(k);
        double lx = kLeft + pw + 15.0;
        out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"{}/>\n",
                           lx, ly, lx + 30.0, ly, s.color, dash);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", lx + 36.0, ly + 4.0, escape(s.label));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace icl::cli

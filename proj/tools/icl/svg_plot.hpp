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

#ifndef ICL_TOOLS_SVG_PLOT_HPP
#define ICL_TOOLS_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace icl::cli {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

/// Static line plot on a fixed 800 x 600 canvas.
struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;

    /// Points that cannot be drawn (non-finite, or non-positive on a log
    /// axis) split the polyline.
    std::string render() const;
};

}  // namespace icl::cli

#endif  // ICL_TOOLS_SVG_PLOT_HPP

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

#ifndef ICL_TOOLS_RUN_CONFIG_HPP
#define ICL_TOOLS_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "icl/fock_oracle.hpp"
#include "icl/heralding.hpp"
#include "icl/interferometer.hpp"

namespace icl::cli {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Spacing { Linear, Log };

struct Sweep {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 1;
    Spacing spacing = Spacing::Linear;

    std::vector<double> points() const;
};

struct RunConfig {
    TopologyKind kind = TopologyKind::TwoSpdc;
    SqueezerParams crystal_a{0.1};
    SqueezerParams crystal_b{0.1};
    SqueezerParams crystal_c{0.1};
    double attenuation = 1.0;

    Sweep transmittance{0.5, 0.5, 1, Spacing::Linear};
    std::vector<double> thermal_photons{0.0};
    Sweep phase;

    DetectorModel detector;

    std::size_t cutoff = 12;
    std::size_t mc_samples = 10000;
    std::uint64_t seed = 1;
    double tolerance_scale = 1.0;

    RunConfig();

    /// Topology of the configured kind at one object setting.
    Topology topology(double transmittance, double thermal_photons) const;
    /// Two-crystal topology with the configured gains.
    Topology two_spdc(double transmittance, double thermal_photons) const;
    fock::FockConfig oracle() const;
};

/// Parses `key = value` lines. `#` starts a comment. Unknown or repeated keys
/// are errors.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace icl::cli

#endif  // ICL_TOOLS_RUN_CONFIG_HPP

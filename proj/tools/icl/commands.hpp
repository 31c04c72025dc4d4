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

#ifndef ICL_TOOLS_COMMANDS_HPP
#define ICL_TOOLS_COMMANDS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace icl::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kConfig = 2;
inline constexpr int kVerification = 3;
inline constexpr int kResource = 4;
}  // namespace exit_code

/// Numeric CSV field: 12 significant digits.
std::string csv_number(double v);

/// fringe.csv: phi,n_plus,n_minus,n_plus_heralded over the phase grid.
/// Needs a single transmittance and a single N_B.
void cmd_fringe(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// visibility.csv plus visibility_NB_<n>.svg per thermal level.
void cmd_scan_visibility(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// snr.csv plus snr.svg on log-log axes.
void cmd_scan_snr(const RunConfig& cfg, const std::filesystem::path& out_dir);

struct Check {
    std::string name;
    double expected = 0.0;
    double got = 0.0;
    double tolerance = 0.0;

    bool pass() const;
    std::string line() const;
};

/// Oracle against engine on every (N_B, T) point: all first and second
/// moments plus the heralded conditional means at both ports.
std::vector<Check> oracle_checks(const RunConfig& cfg);

/// Writes verify_report.txt. Returns true when every check passes.
bool cmd_verify(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace icl::cli

#endif  // ICL_TOOLS_COMMANDS_HPP

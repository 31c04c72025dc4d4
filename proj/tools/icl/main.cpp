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

// icl: parameter scans and oracle verification for induced-coherence interferometers.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "commands.hpp"
#include "icl/errors.hpp"

namespace {

using namespace icl::cli;

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Options& opts) {
    cmd->add_option("--config", opts.config, "run configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out, "output directory")->required();
    cmd->add_option("--seed", opts.seed, "oracle seed, overrides oracle.seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Induced-coherence interferometry scans and oracle checks"};
    app.require_subcommand(1);
    Options opts;
    CLI::App* fringe = app.add_subcommand("fringe", "singles and heralded fringe over the phase grid");
    CLI::App* scan_vis = app.add_subcommand("scan-visibility", "visibility of every configuration versus T");
    CLI::App* scan_snr = app.add_subcommand("scan-snr", "unconditional and heralded SNR versus T");
    CLI::App* verify = app.add_subcommand("verify", "Fock oracle against the Gaussian engine");
    for (CLI::App* cmd : {fringe, scan_vis, scan_snr, verify}) {
        add_common(cmd, opts);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_code::kOk : exit_code::kConfig;
    }

    try {
        RunConfig cfg = load_config(opts.config);
        if (opts.seed) {
            cfg.seed = *opts.seed;
        }
        std::filesystem::path out(opts.out);
        std::filesystem::create_directories(out);
        if (fringe->parsed()) {
            cmd_fringe(cfg, out);
        } else if (scan_vis->parsed()) {
            cmd_scan_visibility(cfg, out);
        } else if (scan_snr->parsed()) {
            cmd_scan_snr(cfg, out);
        } else if (!cmd_verify(cfg, out)) {
            fmt::print(stderr, "icl: verification failed, see {}\n", (out / "verify_report.txt").string());
            return exit_code::kVerification;
        }
    } catch (const ConfigError& e) {
        fmt::print(stderr, "icl: config error: {}\n", e.what());
        return exit_code::kConfig;
    } catch (const icl::ResourceError& e) {
        fmt::print(stderr, "icl: resource guard: {}\n", e.what());
        return exit_code::kResource;
    } catch (const icl::TruncationError& e) {
        fmt::print(stderr, "icl: resource guard: {}\n", e.what());
        return exit_code::kResource;
    } catch (const std::invalid_argument& e) {
        fmt::print(stderr, "icl: invalid parameters: {}\n", e.what());
        return exit_code::kConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "icl: {}\n", e.what());
        return 1;
    }
    return exit_code::kOk;
}

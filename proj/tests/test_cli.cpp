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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "run_config.hpp"

namespace icl::cli {
namespace {

namespace fs = std::filesystem;

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t k = 0; k < header.size(); ++k) {
            if (header[k] == name) {
                return k;
            }
        }
        throw std::out_of_range(name);
    }
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    return out;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Csv read_csv(const fs::path& path) {
    std::ifstream in(path);
    Csv csv;
    std::string line;
    std::getline(in, line);
    csv.header = split(line);
    while (std::getline(in, line)) {
        std::vector<double> row;
        for (const std::string& f : split(line)) {
            row.push_back(std::stod(f));
        }
        csv.rows.push_back(row);
    }
    return csv;
}

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

class CliOutput : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("icl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path dir_;
};

TEST(Config, ParsesKeysAndDefaults) {
    RunConfig cfg = parse(
        "# comment line\n"
        "topology.kind = three_spdc   # trailing comment\n"
        "crystal.A.V = 10\n"
        "crystal.B.V = 2.5\n"
        "crystal.B.theta = 0.3\n"
        "object.T.min = 0.1\n"
        "object.T.max = 0.9\n"
        "object.T.count = 5\n"
        "object.N_B = 0, 10 ,100\n"
        "detector.eta = 0.5\n"
        "detector.nu = 0.01\n"
        "oracle.cutoff = 10\n"
        "oracle.samples = 200\n"
        "oracle.seed = 42\n");
    EXPECT_EQ(cfg.kind, TopologyKind::ThreeSpdc);
    EXPECT_EQ(cfg.crystal_a.gain, 10.0);
    EXPECT_EQ(cfg.crystal_b.gain, 2.5);
    EXPECT_EQ(cfg.crystal_b.phase, 0.3);
    EXPECT_EQ(cfg.crystal_c.gain, 10.0);
    EXPECT_EQ(cfg.thermal_photons, (std::vector<double>{0.0, 10.0, 100.0}));
    std::vector<double> t = cfg.transmittance.points();
    ASSERT_EQ(t.size(), 5u);
    for (std::size_t k = 0; k < t.size(); ++k) {
        EXPECT_NEAR(t[k], 0.1 + 0.2 * static_cast<double>(k), 1e-15);
    }
    EXPECT_EQ(cfg.detector.eta, 0.5);
    EXPECT_EQ(cfg.detector.nu, 0.01);
    EXPECT_EQ(cfg.cutoff, 10u);
    EXPECT_EQ(cfg.mc_samples, 200u);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.topology(0.5, 1.0).kind(), TopologyKind::ThreeSpdc);
    EXPECT_EQ(cfg.phase.count, 33u);
}

TEST(Config, LogSweep) {
    RunConfig cfg = parse("object.T.min = 0.001\nobject.T.max = 1\nobject.T.count = 4\nobject.T.spacing = log\n");
    std::vector<double> t = cfg.transmittance.points();
    ASSERT_EQ(t.size(), 4u);
    EXPECT_NEAR(t[0], 1e-3, 1e-18);
    EXPECT_NEAR(t[1], 1e-2, 1e-15);
    EXPECT_NEAR(t[2], 1e-1, 1e-15);
    EXPECT_EQ(t[3], 1.0);
}

TEST(Config, RejectsMalformedInput) {
    EXPECT_THROW(parse("bogus.key = 1\n"), ConfigError);
    EXPECT_THROW(parse("crystal.A.V = 1\ncrystal.A.V = 2\n"), ConfigError);
    EXPECT_THROW(parse("crystal.A.V = one\n"), ConfigError);
    EXPECT_THROW(parse("crystal.A.V\n"), ConfigError);
    EXPECT_THROW(parse("crystal.A.V = -1\n"), ConfigError);
    EXPECT_THROW(parse("object.T = 1.5\n"), ConfigError);
    EXPECT_THROW(parse("object.T.min = 0.8\nobject.T.max = 0.2\nobject.T.count = 3\n"), ConfigError);
    EXPECT_THROW(parse("object.T.min = 0\nobject.T.max = 1\nobject.T.count = 1\n"), ConfigError);
    EXPECT_THROW(parse("object.T.min = 0\nobject.T.max = 1\nobject.T.count = 3\nobject.T.spacing = log\n"),
                 ConfigError);
    EXPECT_THROW(parse("object.T = 0.5\nobject.T.min = 0\n"), ConfigError);
    EXPECT_THROW(parse("object.N_B = 1, -2\n"), ConfigError);
    EXPECT_THROW(parse("topology.kind = four_spdc\n"), ConfigError);
    EXPECT_THROW(parse("detector.eta = 0\n"), ConfigError);
    EXPECT_THROW(parse("attenuation = 2\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/icl.cfg"), ConfigError);
}

TEST(Csv, TwelveSignificantDigits) {
    EXPECT_EQ(csv_number(0.1), "0.1");
    EXPECT_EQ(csv_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(csv_number(123456.789012345), "123456.789012");
    EXPECT_EQ(csv_number(0.0), "0");
}

TEST_F(CliOutput, FringeReference) {
    RunConfig cfg = parse("crystal.A.V = 0.1\ncrystal.B.V = 0.1\nobject.T = 0.5\nobject.N_B = 10\nphase.min = 0\n"
                          "phase.max = 3\nphase.count = 25\n");
    cmd_fringe(cfg, dir_);
    Csv csv = read_csv(dir_ / "fringe.csv");
    EXPECT_EQ(csv.header, (std::vector<std::string>{"phi", "n_plus", "n_minus", "n_plus_heralded"}));
    ASSERT_EQ(csv.rows.size(), 25u);
    EXPECT_EQ(csv.rows[0][0], 0.0);
    EXPECT_NEAR(csv.rows[0][1], 0.426662, 1e-6);
    EXPECT_NEAR(csv.rows[0][1], 0.426661984871, 1e-9);
}

TEST_F(CliOutput, FringeFlatWhenOpaque) {
    RunConfig cfg = parse("crystal.A.V = 0.1\ncrystal.B.V = 0.1\nobject.T = 0\nobject.N_B = 10\n");
    cmd_fringe(cfg, dir_);
    Csv csv = read_csv(dir_ / "fringe.csv");
    ASSERT_EQ(csv.rows.size(), cfg.phase.count);
    for (const auto& row : csv.rows) {
        EXPECT_EQ(row[1], csv.rows[0][1]);
    }
}

TEST_F(CliOutput, FringeNeedsSinglePoint) {
    RunConfig cfg = parse("object.N_B = 0, 1\n");
    EXPECT_THROW(cmd_fringe(cfg, dir_), ConfigError);
}

TEST_F(CliOutput, VisibilityScanProperties) {
    RunConfig cfg = parse("crystal.A.V = 10\ncrystal.B.V = 10\ncrystal.C.V = 10\nobject.T.min = 0\n"
                          "object.T.max = 1\nobject.T.count = 41\nobject.N_B = 0, 10, 100\n");
    cmd_scan_visibility(cfg, dir_);
    Csv csv = read_csv(dir_ / "visibility.csv");
    EXPECT_EQ(csv.header, (std::vector<std::string>{"T", "N_B", "vis_2spdc", "vis_3spdc", "vis_atten_opt",
                                                    "vis_heralded", "g1_bound"}));
    ASSERT_EQ(csv.rows.size(), 3u * 41u);
    const std::size_t v2 = csv.column("vis_2spdc");
    const std::size_t att = csv.column("vis_atten_opt");
    const std::size_t her = csv.column("vis_heralded");
    const std::size_t g1 = csv.column("g1_bound");
    for (std::size_t k = 0; k < csv.rows.size(); ++k) {
        const auto& r = csv.rows[k];
        EXPECT_EQ(r[1], cfg.thermal_photons[k / 41]);
        EXPECT_EQ(r[0], csv.rows[k % 41][0]);
        EXPECT_LE(r[v2], r[g1] + 1e-10);
        // Both columns are rounded to 12 significant digits.
        EXPECT_NEAR(r[att], r[g1], 2e-12);
        EXPECT_EQ(r[her], csv.rows[k % 41][her]);
    }
    for (const char* name : {"visibility_NB_0.svg", "visibility_NB_10.svg", "visibility_NB_100.svg"}) {
        std::string svg = slurp(dir_ / name);
        EXPECT_NE(svg.find("viewBox=\"0 0 800 600\""), std::string::npos) << name;
        EXPECT_NE(svg.find("<polyline"), std::string::npos) << name;
    }
}

TEST_F(CliOutput, SnrScanProperties) {
    RunConfig cfg = parse("object.T.min = 0.001\nobject.T.max = 1\nobject.T.count = 13\nobject.T.spacing = log\n"
                          "object.N_B = 0, 1, 10, 100\n");
    cmd_scan_snr(cfg, dir_);
    Csv csv = read_csv(dir_ / "snr.csv");
    EXPECT_EQ(csv.header,
              (std::vector<std::string>{"T", "N_B", "snr_uncond", "snr_herald_pair", "snr_herald_general"}));
    ASSERT_EQ(csv.rows.size(), 4u * 13u);
    for (std::size_t i = 0; i < 13; ++i) {
        for (std::size_t b = 1; b < 4; ++b) {
            const auto& prev = csv.rows[(b - 1) * 13 + i];
            const auto& cur = csv.rows[b * 13 + i];
            EXPECT_EQ(cur[3], prev[3]);
            if (cur[0] < 1.0) {
                EXPECT_LT(cur[2], prev[2]);
            }
        }
    }
    for (std::size_t b = 0; b < 4; ++b) {
        const auto& last = csv.rows[b * 13 + 12];
        EXPECT_EQ(last[0], 1.0);
        EXPECT_EQ(last[2], last[3]);
    }
    std::string svg = slurp(dir_ / "snr.svg");
    EXPECT_NE(svg.find("1e-3"), std::string::npos);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
}

TEST_F(CliOutput, ScansAreByteIdentical) {
    RunConfig cfg = parse("crystal.A.V = 10\ncrystal.B.V = 10\nobject.T.min = 0\nobject.T.max = 1\n"
                          "object.T.count = 51\nobject.N_B = 0, 10\n");
    fs::create_directories(dir_ / "a");
    fs::create_directories(dir_ / "b");
    cmd_scan_visibility(cfg, dir_ / "a");
    cmd_scan_visibility(cfg, dir_ / "b");
    EXPECT_EQ(slurp(dir_ / "a" / "visibility.csv"), slurp(dir_ / "b" / "visibility.csv"));
    EXPECT_EQ(slurp(dir_ / "a" / "visibility_NB_10.svg"), slurp(dir_ / "b" / "visibility_NB_10.svg"));
    EXPECT_EQ(slurp(dir_ / "a" / "visibility.csv").find('\r'), std::string::npos);
}

constexpr const char* kSmallVerify =
    "crystal.A.V = 0.1\ncrystal.B.V = 0.1\nobject.T.min = 0.5\nobject.T.max = 1\nobject.T.count = 2\n"
    "object.N_B = 0, 0.5\noracle.cutoff = 14\noracle.samples = 300\noracle.seed = 3\n";

TEST_F(CliOutput, VerifySmallSuitePasses) {
    RunConfig cfg = parse(kSmallVerify);
    std::vector<Check> checks = oracle_checks(cfg);
    EXPECT_GE(checks.size(), 4u * 50u);
    EXPECT_TRUE(cmd_verify(cfg, dir_));
    std::ifstream in(dir_ / "verify_report.txt");
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lines;
        if (line.rfind("summary", 0) != 0) {
            EXPECT_NE(line.find("| PASS"), std::string::npos) << line;
        }
    }
    EXPECT_GE(lines, checks.size());
}

TEST_F(CliOutput, VerifyFailsWithCorruptedTolerance) {
    RunConfig cfg = parse(std::string(kSmallVerify) + "verify.tolerance_scale = 0\n");
    EXPECT_FALSE(cmd_verify(cfg, dir_));
    EXPECT_NE(slurp(dir_ / "verify_report.txt").find("| FAIL"), std::string::npos);
}

int run_icl(const std::string& args) {
    std::string cmd = std::string(ICL_BINARY) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliOutput, ExitCodes) {
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir_ / name) << text;
        return (dir_ / name).string();
    };
    std::string out = (dir_ / "out").string();
    std::string good = write("good.cfg", "object.T = 0.5\nobject.N_B = 10\n");
    EXPECT_EQ(run_icl("fringe --config " + good + " --out " + out), exit_code::kOk);
    EXPECT_TRUE(fs::exists(dir_ / "out" / "fringe.csv"));
    EXPECT_EQ(run_icl("fringe --config " + write("bad.cfg", "colour = blue\n") + " --out " + out),
              exit_code::kConfig);
    EXPECT_EQ(run_icl("scan-snr --out " + out), exit_code::kConfig);
    EXPECT_EQ(run_icl("verify --config " + write("big.cfg", "object.T = 0.5\noracle.cutoff = 80\n") + " --out " + out),
              exit_code::kResource);
    std::string failing = write("fail.cfg", "object.T = 1\nverify.tolerance_scale = 0\n");
    EXPECT_EQ(run_icl("verify --config " + failing + " --out " + out), exit_code::kVerification);
    EXPECT_EQ(run_icl("verify --config " + failing + " --out " + out + " --seed 5"), exit_code::kVerification);
}

}  // namespace
}  // namespace icl::cli

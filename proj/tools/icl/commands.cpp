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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/core.h>

#include "icl/heralding.hpp"
#include "icl/metrics.hpp"
#include "svg_plot.hpp"

namespace icl::cli {
namespace {

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

// Evaluates f(0..n-1) on worker threads; results land in index order.
template <typename Row, typename F>
std::vector<Row> parallel_map(std::size_t n, F f) {
    std::vector<Row> rows(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                rows[k] = f(k);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };
    std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(work);
        }
        work();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    }
    out << text;
}

std::string csv_row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0) {
            line += ',';
        }
        line += csv_number(values[k]);
    }
    line += '\n';
    return line;
}

std::string nb_tag(double nb) { return fmt::format("{:g}", nb); }

}  // namespace

std::string csv_number(double v) { return fmt::format("{:.12g}", v); }

void cmd_fringe(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    if (cfg.transmittance.count != 1 || cfg.thermal_photons.size() != 1) {
        throw ConfigError("fringe needs a single object.T and a single object.N_B");
    }
    Topology topo = cfg.topology(cfg.transmittance.min, cfg.thermal_photons.front());
    std::vector<double> phases = cfg.phase.points();
    auto rows = parallel_map<std::vector<double>>(phases.size(), [&](std::size_t k) {
        double phi = phases[k];
        SinglesPair s = singles_fringe_analytic(topo, phi);
        return std::vector<double>{phi, s.n_plus, s.n_minus, heralded_singles_mode_matched(topo, phi, cfg.detector)};
    });
    std::string csv = "phi,n_plus,n_minus,n_plus_heralded\n";
    for (const auto& r : rows) {
        csv += csv_row(r);
    }
    write_text(out_dir / "fringe.csv", csv);
}

void cmd_scan_visibility(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    std::vector<double> ts = cfg.transmittance.points();
    const std::vector<double>& nbs = cfg.thermal_photons;
    auto rows = parallel_map<std::vector<double>>(nbs.size() * ts.size(), [&](std::size_t k) {
        double nb = nbs[k / ts.size()];
        double t = ts[k % ts.size()];
        ObjectPort object(t, nb);
        Topology two = cfg.two_spdc(t, nb);
        Topology three = Topology::three_spdc(cfg.crystal_a, cfg.crystal_b, cfg.crystal_c, object);
        return std::vector<double>{t,
                                   nb,
                                   visibility(two),
                                   visibility(three),
                                   optimal_attenuated_visibility(t, cfg.crystal_a.gain, nb),
                                   heralded_visibility_pair_limit(two),
                                   g1_coherence(two)};
    });
    std::string csv = "T,N_B,vis_2spdc,vis_3spdc,vis_atten_opt,vis_heralded,g1_bound\n";
    for (const auto& r : rows) {
        csv += csv_row(r);
    }
    write_text(out_dir / "visibility.csv", csv);

    const char* labels[] = {"2-SPDC", "3-SPDC", "attenuated (optimal)", "heralded", "|g1| bound"};
    for (std::size_t b = 0; b < nbs.size(); ++b) {
        LinePlot plot;
        plot.title = fmt::format("Visibility vs T, N_B = {}", nb_tag(nbs[b]));
        plot.x_label = "T";
        plot.y_label = "visibility";
        for (std::size_t c = 0; c < 5; ++c) {
            Series s;
            s.label = labels[c];
            s.color = kPalette[c];
            s.dashed = c >= 2 && c != 3;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                s.x.push_back(ts[i]);
                s.y.push_back(rows[b * ts.size() + i][2 + c]);
            }
            plot.series.push_back(std::move(s));
        }
        write_text(out_dir / fmt::format("visibility_NB_{}.svg", nb_tag(nbs[b])), plot.render());
    }
}

void cmd_scan_snr(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    std::vector<double> ts = cfg.transmittance.points();
    const std::vector<double>& nbs = cfg.thermal_photons;
    auto rows = parallel_map<std::vector<double>>(nbs.size() * ts.size(), [&](std::size_t k) {
        double nb = nbs[k / ts.size()];
        double t = ts[k % ts.size()];
        Topology two = cfg.two_spdc(t, nb);
        return std::vector<double>{t, nb, snr_unconditional(two, 0.0).value,
                                   snr_heralded(two, 0.0, HeraldLimit::Pair).value,
                                   snr_heralded(two, 0.0, HeraldLimit::General).value};
    });
    std::string csv = "T,N_B,snr_uncond,snr_herald_pair,snr_herald_general\n";
    for (const auto& r : rows) {
        csv += csv_row(r);
    }
    write_text(out_dir / "snr.csv", csv);

    LinePlot plot;
    plot.title = "Photon-number-difference SNR vs T";
    plot.x_label = "T";
    plot.y_label = "SNR";
    plot.log_x = true;
    plot.log_y = true;
    for (std::size_t b = 0; b < nbs.size(); ++b) {
        Series s;
        s.label = fmt::format("unconditional, N_B = {}", nb_tag(nbs[b]));
        s.color = kPalette[(b + 1) % std::size(kPalette)];
        for (std::size_t i = 0; i < ts.size(); ++i) {
            s.x.push_back(ts[i]);
            s.y.push_back(rows[b * ts.size() + i][2]);
        }
        plot.series.push_back(std::move(s));
    }
    if (!nbs.empty()) {
        Series s;
        s.label = "heralded (pair)";
        s.color = kPalette[0];
        s.dashed = true;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            s.x.push_back(ts[i]);
            s.y.push_back(rows[i][3]);
        }
        plot.series.push_back(std::move(s));
    }
    write_text(out_dir / "snr.svg", plot.render());
}

bool Check::pass() const { return std::abs(got - expected) <= tolerance; }

std::string Check::line() const {
    return fmt::format("{} | expected {:.12g} | got {:.12g} | tolerance {:.3g} | {}", name, expected, got, tolerance,
                       pass() ? "PASS" : "FAIL");
}

std::vector<Check> oracle_checks(const RunConfig& cfg) {
    std::vector<Check> checks;
    fock::FockConfig fcfg = cfg.oracle();
    const double phi = cfg.phase.min;
    for (double nb : cfg.thermal_photons) {
        for (double t : cfg.transmittance.points()) {
            Topology topo = cfg.topology(t, nb);
            Network net = build_network(topo, phi);
            GaussianState g = run(net);
            const std::size_t n = net.n_modes;
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    pairs.emplace_back(i, j);
                }
            }
            const std::size_t herald = modes::kHerald.index;
            const std::size_t plus = modes::kPlusPort.index;
            const std::size_t minus = modes::kMinusPort.index;
            const std::size_t columns = 2 * n + 4 * pairs.size() + 3;
            fock::SampleTable table = fock::sample_table(fcfg, net, columns, [&](fock::MomentEvaluator& e,
                                                                                  std::span<double> r) {
                std::size_t c = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    cplx m = e.mean(i);
                    r[c++] = m.real();
                    r[c++] = m.imag();
                }
                for (const auto& [i, j] : pairs) {
                    cplx nm = e.normal(i, j);
                    cplx am = e.anomalous(i, j);
                    r[c++] = nm.real();
                    r[c++] = nm.imag();
                    r[c++] = am.real();
                    r[c++] = am.imag();
                }
                r[c++] = e.number_product(herald, plus);
                r[c++] = e.number_product(herald, minus);
                r[c++] = e.number(herald);
            });

            std::string point = fmt::format("T={:g} N_B={:g}", t, nb);
            auto add = [&](std::string name, double expected, const fock::OracleEstimate& est) {
                double tol = cfg.tolerance_scale * std::max(1e-8, 3.0 * est.std_error);
                checks.push_back({point + " " + name, expected, est.value, tol});
            };
            std::size_t c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                add(fmt::format("<a{}> re", i), 0.0, table.mean(c++));
                add(fmt::format("<a{}> im", i), 0.0, table.mean(c++));
            }
            for (const auto& [i, j] : pairs) {
                auto ii = static_cast<Eigen::Index>(i);
                auto jj = static_cast<Eigen::Index>(j);
                cplx nm = g.normal()(ii, jj);
                cplx am = g.anomalous()(ii, jj);
                add(fmt::format("<a{}^dag a{}> re", i, j), nm.real(), table.mean(c++));
                add(fmt::format("<a{}^dag a{}> im", i, j), nm.imag(), table.mean(c++));
                add(fmt::format("<a{} a{}> re", i, j), am.real(), table.mean(c++));
                add(fmt::format("<a{} a{}> im", i, j), am.imag(), table.mean(c++));
            }
            const std::size_t joint_plus = c;
            const std::size_t joint_minus = c + 1;
            const std::size_t rate = c + 2;
            if (g.normal()(static_cast<Eigen::Index>(herald), static_cast<Eigen::Index>(herald)).real() > 0.0) {
                add("heralded mean +", conditional_mean_wick(g, modes::kHerald, modes::kPlusPort),
                    table.derived([&](std::span<const double> m) { return m[joint_plus] / m[rate]; }));
                add("heralded mean -", conditional_mean_wick(g, modes::kHerald, modes::kMinusPort),
                    table.derived([&](std::span<const double> m) { return m[joint_minus] / m[rate]; }));
            }
        }
    }
    return checks;
}

bool cmd_verify(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    std::vector<Check> checks = oracle_checks(cfg);
    std::size_t passed = 0;
    std::string report;
    for (const Check& c : checks) {
        report += c.line() + '\n';
        passed += c.pass() ? 1 : 0;
    }
    report += fmt::format("summary | {} of {} checks passed\n", passed, checks.size());
    write_text(out_dir / "verify_report.txt", report);
    return passed == checks.size();
}

}  // namespace icl::cli

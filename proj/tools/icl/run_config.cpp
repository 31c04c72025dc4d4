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

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include <fmt/core.h>

namespace icl::cli {
namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
    }
    return value;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, text));
    }
    return value;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        out.push_back(to_double(key, trim(text.substr(start, comma - start))));
        start = comma + 1;
    }
    return out;
}

// Key/value store that remembers which entries were read.
class Entries {
  public:
    void add(const std::string& key, const std::string& value, int line) {
        if (!values_.emplace(key, value).second) {
            throw ConfigError(fmt::format("line {}: duplicate key '{}'", line, key));
        }
    }

    const std::string* take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) {
            return nullptr;
        }
        used_.push_back(key);
        return &it->second;
    }

    void check_all_used() const {
        for (const auto& [key, value] : values_) {
            if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
                throw ConfigError(fmt::format("unknown key '{}'", key));
            }
        }
    }

  private:
    std::map<std::string, std::string> values_;
    std::vector<std::string> used_;
};

void read_double(Entries& e, const std::string& key, double& target) {
    if (const std::string* v = e.take(key)) {
        target = to_double(key, *v);
    }
}

TopologyKind to_kind(const std::string& text) {
    for (TopologyKind kind : {TopologyKind::TwoSpdc, TopologyKind::TwoSpdcAttenuated, TopologyKind::ThreeSpdc}) {
        if (text == to_string(kind)) {
            return kind;
        }
    }
    throw ConfigError(fmt::format("topology.kind: unknown topology '{}'", text));
}

void check_sweep(const std::string& name, const Sweep& s) {
    if (s.min > s.max) {
        throw ConfigError(fmt::format("{}: min {} exceeds max {}", name, s.min, s.max));
    }
    if (s.count < 2) {
        throw ConfigError(fmt::format("{}: a sweep needs count >= 2", name));
    }
    if (s.spacing == Spacing::Log && !(s.min > 0.0)) {
        throw ConfigError(fmt::format("{}: log spacing needs min > 0", name));
    }
}

Sweep read_sweep(Entries& e, const std::string& name, const Sweep& fallback) {
    Sweep s = fallback;
    const std::string* scalar = e.take(name);
    const std::string* min = e.take(name + ".min");
    const std::string* max = e.take(name + ".max");
    const std::string* count = e.take(name + ".count");
    const std::string* spacing = e.take(name + ".spacing");
    bool ranged = min || max || count || spacing;
    if (scalar && ranged) {
        throw ConfigError(fmt::format("{}: give either a value or a sweep, not both", name));
    }
    if (scalar) {
        double v = to_double(name, *scalar);
        return Sweep{v, v, 1, Spacing::Linear};
    }
    if (!ranged) {
        return s;
    }
    if (!min || !max || !count) {
        throw ConfigError(fmt::format("{}: a sweep needs min, max and count", name));
    }
    s.min = to_double(name + ".min", *min);
    s.max = to_double(name + ".max", *max);
    s.count = static_cast<std::size_t>(to_unsigned(name + ".count", *count));
    s.spacing = Spacing::Linear;
    if (spacing) {
        if (*spacing == "log") {
            s.spacing = Spacing::Log;
        } else if (*spacing != "linear") {
            throw ConfigError(fmt::format("{}.spacing: expected 'linear' or 'log'", name));
        }
    }
    check_sweep(name, s);
    return s;
}

SqueezerParams make_squeezer(const std::string& name, double gain, double phase) {
    if (!(gain >= 0.0)) {
        throw ConfigError(fmt::format("{}: gain must be non-negative", name));
    }
    return SqueezerParams(gain, phase);
}

}  // namespace

std::vector<double> Sweep::points() const {
    if (count == 1) {
        return {min};
    }
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        double f = static_cast<double>(k) / static_cast<double>(count - 1);
        out[k] = spacing == Spacing::Log ? min * std::pow(max / min, f) : min + (max - min) * f;
    }
    out.back() = max;
    return out;
}

RunConfig::RunConfig() : phase{0.0, std::numbers::pi, 33, Spacing::Linear} {}

Topology RunConfig::topology(double transmittance, double thermal_photons) const {
    ObjectPort object(transmittance, thermal_photons);
    switch (kind) {
        case TopologyKind::TwoSpdcAttenuated:
            return Topology::two_spdc_attenuated(crystal_a, crystal_b, attenuation, object);
        case TopologyKind::ThreeSpdc:
            return Topology::three_spdc(crystal_a, crystal_b, crystal_c, object);
        case TopologyKind::TwoSpdc:
            break;
    }
    return Topology::two_spdc(crystal_a, crystal_b, object);
}

Topology RunConfig::two_spdc(double transmittance, double thermal_photons) const {
    return Topology::two_spdc(crystal_a, crystal_b, ObjectPort(transmittance, thermal_photons));
}

fock::FockConfig RunConfig::oracle() const {
    fock::FockConfig cfg;
    cfg.cutoff = cutoff;
    cfg.mc_samples = mc_samples;
    cfg.seed = seed;
    return cfg;
}

RunConfig parse_config(std::istream& in) {
    Entries entries;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = trim(raw.substr(0, raw.find('#')));
        if (text.empty()) {
            continue;
        }
        auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", line));
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(fmt::format("line {}: empty key or value", line));
        }
        entries.add(key, value, line);
    }

    RunConfig cfg;
    if (const std::string* v = entries.take("topology.kind")) {
        cfg.kind = to_kind(*v);
    }

    double va = cfg.crystal_a.gain;
    double vb = cfg.crystal_b.gain;
    double ta = 0.0;
    double tb = 0.0;
    read_double(entries, "crystal.A.V", va);
    read_double(entries, "crystal.A.theta", ta);
    read_double(entries, "crystal.B.V", vb);
    read_double(entries, "crystal.B.theta", tb);
    double vc = va;
    read_double(entries, "crystal.C.V", vc);
    cfg.crystal_a = make_squeezer("crystal.A.V", va, ta);
    cfg.crystal_b = make_squeezer("crystal.B.V", vb, tb);
    cfg.crystal_c = make_squeezer("crystal.C.V", vc, 0.0);

    read_double(entries, "attenuation", cfg.attenuation);
    if (!(cfg.attenuation >= 0.0 && cfg.attenuation <= 1.0)) {
        throw ConfigError("attenuation must lie in [0, 1]");
    }

    cfg.transmittance = read_sweep(entries, "object.T", cfg.transmittance);
    if (cfg.transmittance.min < 0.0 || cfg.transmittance.max > 1.0) {
        throw ConfigError("object.T must lie in [0, 1]");
    }
    if (const std::string* v = entries.take("object.N_B")) {
        cfg.thermal_photons = to_list("object.N_B", *v);
    }
    for (double nb : cfg.thermal_photons) {
        if (nb < 0.0) {
            throw ConfigError("object.N_B entries must be non-negative");
        }
    }
    cfg.phase = read_sweep(entries, "phase", cfg.phase);

    double eta = cfg.detector.eta;
    double nu = cfg.detector.nu;
    read_double(entries, "detector.eta", eta);
    read_double(entries, "detector.nu", nu);
    try {
        cfg.detector = DetectorModel(eta, nu);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (const std::string* v = entries.take("oracle.cutoff")) {
        cfg.cutoff = static_cast<std::size_t>(to_unsigned("oracle.cutoff", *v));
    }
    if (const std::string* v = entries.take("oracle.samples")) {
        cfg.mc_samples = static_cast<std::size_t>(to_unsigned("oracle.samples", *v));
    }
    if (const std::string* v = entries.take("oracle.seed")) {
        cfg.seed = to_unsigned("oracle.seed", *v);
    }
    if (cfg.cutoff == 0 || cfg.mc_samples == 0) {
        throw ConfigError("oracle.cutoff and oracle.samples must be positive");
    }
    read_double(entries, "verify.tolerance_scale", cfg.tolerance_scale);
    if (!(cfg.tolerance_scale >= 0.0)) {
        throw ConfigError("verify.tolerance_scale must be non-negative");
    }

    entries.check_all_used();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    }
    return parse_config(in);
}

}  // namespace icl::cli

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

#include "icl/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace icl {

namespace {

void require_two_spdc(const Topology& topo, const char* what) {
    if (topo.kind() != TopologyKind::TwoSpdc) {
        throw std::invalid_argument(std::string(what) + " is only defined for the two-crystal topology");
    }
}

// Moments of the B-signal arm and the A/B cross term for the bare two-crystal core.
struct CoreMoments {
    double n_a;
    double n_b;
    double coherence;  // |<a_A^dag a_B>|
    double offset;     // arg <a_A^dag a_B> at phi = 0
};

CoreMoments core_moments(const Topology& topo) {
    double va = topo.crystal_a().gain;
    double vb = topo.crystal_b().gain;
    double t = topo.object().transmittance;
    double nb = topo.object().thermal_photons;
    return CoreMoments{
        va,
        vb * (1.0 + t * va + (1.0 - t) * nb),
        std::sqrt(t * (1.0 + va) * va * vb),
        topo.crystal_b().phase - topo.crystal_a().phase,
    };
}

}  // namespace

const char* to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::TwoSpdc:
            return "two_spdc";
        case TopologyKind::TwoSpdcAttenuated:
            return "two_spdc_attenuated";
        case TopologyKind::ThreeSpdc:
            return "three_spdc";
    }
    return "unknown";
}

Topology::Topology(TopologyKind kind, SqueezerParams a, SqueezerParams b, std::optional<SqueezerParams> c,
                   std::optional<double> attenuation, ObjectPort object)
    : kind_(kind), a_(a), b_(b), c_(c), attenuation_(attenuation), object_(object) {
    if (attenuation_ && !(*attenuation_ >= 0.0 && *attenuation_ <= 1.0)) {
        throw std::invalid_argument("attenuation must lie in [0, 1]");
    }
}

Topology Topology::two_spdc(SqueezerParams a, SqueezerParams b, ObjectPort object) {
    return Topology(TopologyKind::TwoSpdc, a, b, std::nullopt, std::nullopt, object);
}

Topology Topology::two_spdc_attenuated(SqueezerParams a, SqueezerParams b, double attenuation,
                                       ObjectPort object) {
    return Topology(TopologyKind::TwoSpdcAttenuated, a, b, std::nullopt, attenuation, object);
}

Topology Topology::three_spdc(SqueezerParams a, SqueezerParams b, SqueezerParams c, ObjectPort object) {
    return Topology(TopologyKind::ThreeSpdc, a, b, c, std::nullopt, object);
}

Topology Topology::with_object(ObjectPort object) const {
    Topology copy = *this;
    copy.object_ = object;
    return copy;
}

Topology Topology::with_attenuation(double attenuation) const {
    if (kind_ != TopologyKind::TwoSpdcAttenuated) {
        throw std::invalid_argument("only the attenuated topology carries an attenuation factor");
    }
    return Topology(kind_, a_, b_, c_, attenuation, object_);
}

std::size_t mode_count(const Topology& topo) { return topo.kind() == TopologyKind::TwoSpdc ? 4 : 5; }

Network build_pre_splitter_network(const Topology& topo, double phi) {
    using namespace modes;
    Network net(mode_count(topo));
    net.thermal(kThermal, topo.object().thermal_photons);
    net.squeezer(kSignalA, kIdler, topo.crystal_a());
    net.loss(kIdler, kThermal, topo.object().transmittance);
    net.squeezer(kSignalB, kIdler, topo.crystal_b());
    switch (topo.kind()) {
        case TopologyKind::TwoSpdc:
            break;
        case TopologyKind::TwoSpdcAttenuated:
            net.loss(kSignalB, kAuxiliary, *topo.attenuation());
            break;
        case TopologyKind::ThreeSpdc:
            net.squeezer(kSignalA, kAuxiliary, *topo.crystal_c());
            break;
    }
    net.phase(kSignalB, 2.0 * phi);
    return net;
}

Network build_network(const Topology& topo, double phi) {
    Network net = build_pre_splitter_network(topo, phi);
    const double h = std::numbers::sqrt2 / 2.0;
    net.beam_splitter(modes::kSignalB, modes::kSignalA, h, h);
    return net;
}

SinglesPair singles_fringe_analytic(const Topology& topo, double phi) {
    CoreMoments core = core_moments(topo);
    double n1 = core.n_a;
    double n2 = core.n_b;
    double coherence = core.coherence;
    switch (topo.kind()) {
        case TopologyKind::TwoSpdc:
            break;
        case TopologyKind::TwoSpdcAttenuated: {
            double eta = *topo.attenuation();
            n2 *= eta;
            coherence *= std::sqrt(eta);
            break;
        }
        case TopologyKind::ThreeSpdc: {
            double vc = topo.crystal_c()->gain;
            n1 = (1.0 + vc) * n1 + vc;
            coherence *= std::sqrt(1.0 + vc);
            break;
        }
    }
    double dc = 0.5 * (n1 + n2);
    double ac = coherence * std::cos(2.0 * phi + core.offset);
    return SinglesPair{dc + ac, dc - ac};
}

SinglesPair singles_fringe_engine(const Topology& topo, double phi) {
    GaussianState out = run(build_network(topo, phi));
    return SinglesPair{mean_photon_number(out, modes::kPlusPort), mean_photon_number(out, modes::kMinusPort)};
}

FringeResult fringe_from_samples(double at_0, double at_quarter, double at_half) {
    double dc = 0.5 * (at_0 + at_half);
    double cos_part = 0.5 * (at_0 - at_half);
    double sin_part = at_quarter - dc;
    double amplitude = std::hypot(cos_part, sin_part);
    double visibility = dc > 0.0 ? amplitude / dc : 0.0;
    return FringeResult{dc, amplitude, visibility};
}

FringeResult fringe_from(const std::function<double(double)>& n_plus_of_phi) {
    using std::numbers::pi;
    return fringe_from_samples(n_plus_of_phi(0.0), n_plus_of_phi(pi / 4.0), n_plus_of_phi(pi / 2.0));
}

FringeResult fringe_engine(const Topology& topo) {
    return fringe_from([&](double phi) { return singles_fringe_engine(topo, phi).n_plus; });
}

FringeResult fringe_analytic(const Topology& topo) {
    return fringe_from([&](double phi) { return singles_fringe_analytic(topo, phi).n_plus; });
}

PreSplitterMoments pre_splitter_moments(const Topology& topo) {
    require_two_spdc(topo, "pre_splitter_moments");
    CoreMoments core = core_moments(topo);
    return PreSplitterMoments{core.n_a, core.n_b, core.coherence};
}

PreSplitterMoments pre_splitter_moments_engine(const Topology& topo) {
    require_two_spdc(topo, "pre_splitter_moments_engine");
    GaussianState s = run(build_pre_splitter_network(topo, 0.0));
    return PreSplitterMoments{
        mean_photon_number(s, modes::kSignalA),
        mean_photon_number(s, modes::kSignalB),
        std::abs(cross_moment(s, modes::kSignalA, modes::kSignalB, MomentKind::Normal)),
    };
}

double g1_coherence(const Topology& topo) {
    require_two_spdc(topo, "g1_coherence");
    double va = topo.crystal_a().gain;
    double t = topo.object().transmittance;
    double nb = topo.object().thermal_photons;
    return std::sqrt(t * (1.0 + va) / (1.0 + t * va + (1.0 - t) * nb));
}

}  // namespace icl

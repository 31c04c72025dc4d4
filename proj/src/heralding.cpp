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

#include "icl/heralding.hpp"

#include <cmath>
#include <stdexcept>

#include "icl/errors.hpp"

namespace icl {

namespace {

void require_two_spdc(const Topology& topo, const char* what) {
    if (topo.kind() != TopologyKind::TwoSpdc) {
        throw std::invalid_argument(std::string(what) + " is only defined for the two-crystal topology");
    }
}

HeraldedFringe to_heralded(const FringeResult& f) { return HeraldedFringe{f.dc, f.amplitude, f.visibility}; }

}  // namespace

DetectorModel::DetectorModel(double eta, double nu) : eta(eta), nu(nu) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("detector efficiency must lie in (0, 1]");
    }
    if (!(nu >= 0.0)) {
        throw std::invalid_argument("dark-count mean must be non-negative");
    }
}

double joint_number_moment(const GaussianState& state, ModeId mode_i, ModeId mode_s) {
    if (mode_i == mode_s) {
        throw std::invalid_argument("herald and signal must be different modes");
    }
    double n_i = mean_photon_number(state, mode_i);
    double n_s = mean_photon_number(state, mode_s);
    cplx pair = cross_moment(state, mode_i, mode_s, MomentKind::Anomalous);  // <b_I b_S>
    // <b_I b_S^dag> = <b_S^dag b_I> for distinct modes.
    cplx beat = cross_moment(state, mode_s, mode_i, MomentKind::Normal);
    return n_i * n_s + std::norm(pair) + std::norm(beat);
}

double conditional_mean_wick(const GaussianState& state, ModeId mode_i, ModeId mode_s) {
    double n_i = mean_photon_number(state, mode_i);
    if (!(n_i > 0.0)) {
        throw NoHeraldEvents("no herald events: idler mean photon number is zero");
    }
    return joint_number_moment(state, mode_i, mode_s) / n_i;
}

double conditional_mean_povm(const GaussianState& state, ModeId mode_i, ModeId mode_s,
                             const DetectorModel& det) {
    double n_i = mean_photon_number(state, mode_i);
    double n_s = mean_photon_number(state, mode_s);
    double clicks = det.eta * n_i + det.nu;
    if (!(clicks > 0.0)) {
        throw NoHeraldEvents("no click probability: eta <n_I> + nu is zero");
    }
    double joint = n_i > 0.0 ? joint_number_moment(state, mode_i, mode_s) : 0.0;
    return (det.eta * joint + det.nu * n_s) / clicks;
}

Network mode_matched_network(const Topology& topo, double phi) {
    ObjectPort matched(topo.object().transmittance, 0.0);
    return build_network(topo.with_object(matched), phi);
}

double heralded_singles_mode_matched(const Topology& topo, double phi) {
    GaussianState out = run(mode_matched_network(topo, phi));
    return conditional_mean_wick(out, modes::kHerald, modes::kPlusPort);
}

double heralded_singles_mode_matched(const Topology& topo, double phi, const DetectorModel& det) {
    GaussianState out = run(mode_matched_network(topo, phi));
    return conditional_mean_povm(out, modes::kHerald, modes::kPlusPort, det);
}

HeraldedFringe heralded_fringe_mode_matched(const Topology& topo) {
    require_two_spdc(topo, "heralded_fringe_mode_matched");
    return to_heralded(fringe_from([&](double phi) { return heralded_singles_mode_matched(topo, phi); }));
}

HeraldedFringe heralded_fringe_shared_mode(const Topology& topo) {
    require_two_spdc(topo, "heralded_fringe_shared_mode");
    return to_heralded(fringe_from([&](double phi) {
        GaussianState out = run(build_network(topo, phi));
        return conditional_mean_wick(out, modes::kHerald, modes::kPlusPort);
    }));
}

HeraldMoments herald_moments_closed_form(const Topology& topo, double phi) {
    require_two_spdc(topo, "herald_moments_closed_form");
    double va = topo.crystal_a().gain;
    double vb = topo.crystal_b().gain;
    double ua = 1.0 + va;
    double ub = 1.0 + vb;
    double t = topo.object().transmittance;
    double c = std::cos(2.0 * phi + topo.crystal_b().phase - topo.crystal_a().phase);
    HeraldMoments m;
    m.n_idler = ub * t * va + vb;
    m.n_signal = 0.5 * (va + vb + t * va * vb + 2.0 * std::sqrt(t * ua * va * vb) * c);
    m.pair_correlation = 0.5 * ub * t * ua * (t * ua * vb + va + 2.0 * std::sqrt(t * ua * va * vb) * c);
    return m;
}

HeraldedFringe heralded_fringe_closed_form(const Topology& topo) {
    require_two_spdc(topo, "heralded_fringe_closed_form");
    double va = topo.crystal_a().gain;
    double vb = topo.crystal_b().gain;
    double ua = 1.0 + va;
    double ub = 1.0 + vb;
    double t = topo.object().transmittance;
    double n_idler = ub * t * va + vb;
    double gamma = std::sqrt(t * ua * va * vb);
    HeraldedFringe f;
    f.dc = 0.5 * (va + vb + t * va * vb) + ub / (2.0 * n_idler) * (vb * (t * ua) * (t * ua) + t * ua * va);
    f.amplitude = gamma + ub / n_idler * t * ua * gamma;
    f.visibility = f.dc > 0.0 ? f.amplitude / f.dc : 0.0;
    return f;
}

double heralded_visibility_pair_limit(const Topology& topo) {
    require_two_spdc(topo, "heralded_visibility_pair_limit");
    double va = topo.crystal_a().gain;
    double vb = topo.crystal_b().gain;
    double t = topo.object().transmittance;
    double denom = va + vb + t * va * vb;
    if (!(denom > 0.0)) {
        return 0.0;
    }
    return 2.0 * std::sqrt(t * (1.0 + va) * va * vb) / denom;
}

}  // namespace icl

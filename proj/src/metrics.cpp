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

#include "icl/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "icl/heralding.hpp"

namespace icl {

namespace {

void require_two_spdc(const Topology& topo, const char* what) {
    if (topo.kind() != TopologyKind::TwoSpdc) {
        throw std::invalid_argument(std::string(what) + " is only defined for the two-crystal topology");
    }
}

double fringe_cos(const Topology& topo, double phi) {
    return std::cos(2.0 * phi + topo.crystal_b().phase - topo.crystal_a().phase);
}

// 4 T (1 + V_A) V_A V_B cos^2 / (V_A + V_B + T V_A V_B + pedestal).
double pair_snr(const Topology& topo, double phi, double pedestal) {
    double va = topo.crystal_a().gain;
    double vb = topo.crystal_b().gain;
    double t = topo.object().transmittance;
    double denom = va + vb + t * va * vb + pedestal;
    double c = fringe_cos(topo, phi);
    return denom > 0.0 ? 4.0 * t * (1.0 + va) * va * vb * c * c / denom : 0.0;
}

SnrResult make_snr(double power_ratio, SnrConvention convention) {
    return SnrResult{power_ratio, SnrConvention::PowerRatio}.as(convention);
}

}  // namespace

SnrResult SnrResult::as(SnrConvention target) const {
    if (target == convention) {
        return *this;
    }
    if (target == SnrConvention::AmplitudeRatio) {
        return SnrResult{std::sqrt(value), target};
    }
    return SnrResult{value * value, target};
}

double visibility(const Topology& topo) { return fringe_engine(topo).visibility; }

double visibility_closed_form(const Topology& topo) {
    double va = topo.crystal_a().gain;
    double vb = topo.crystal_b().gain;
    double t = topo.object().transmittance;
    double nb = topo.object().thermal_photons;
    double pedestal = (1.0 - t) * nb * vb;
    double numerator = 0.0;
    double denominator = 0.0;
    switch (topo.kind()) {
        case TopologyKind::TwoSpdc:
            numerator = 2.0 * std::sqrt((1.0 + va) * va * vb * t);
            denominator = va + vb + t * va * vb + pedestal;
            break;
        case TopologyKind::TwoSpdcAttenuated: {
            double eta = *topo.attenuation();
            numerator = 2.0 * std::sqrt(eta * (1.0 + va) * va * vb * t);
            denominator = va + eta * vb * (1.0 + t * va + (1.0 - t) * nb);
            break;
        }
        case TopologyKind::ThreeSpdc: {
            double vc = topo.crystal_c()->gain;
            numerator = 2.0 * std::sqrt((1.0 + va) * (1.0 + vc) * va * vb * t);
            denominator = (1.0 + vc) * va + vb + vc + t * va * vb + pedestal;
            break;
        }
    }
    return denominator > 0.0 ? numerator / denominator : 0.0;
}

double optimal_attenuated_visibility(double transmittance, double gain_a, double thermal_photons) {
    if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
        throw std::invalid_argument("transmittance must lie in [0, 1]");
    }
    if (!(gain_a > 0.0)) {
        throw std::invalid_argument("crystal A gain must be positive");
    }
    if (!(thermal_photons >= 0.0)) {
        throw std::invalid_argument("thermal photon number must be non-negative");
    }
    double t = transmittance;
    return std::sqrt(t * (1.0 + gain_a) / (1.0 + t * gain_a + (1.0 - t) * thermal_photons));
}

AttenuationOptimum maximize_visibility_over_attenuation(const Topology& topo) {
    if (topo.kind() != TopologyKind::TwoSpdcAttenuated) {
        throw std::invalid_argument("attenuation search needs the attenuated topology");
    }
    auto negative_visibility = [&](double eta) { return -visibility(topo.with_attenuation(eta)); };
    // Brent's method over eta.
    std::uintmax_t max_iter = 500;
    auto [eta, value] = boost::math::tools::brent_find_minima(negative_visibility, 0.0, 1.0,
                                                               std::numeric_limits<double>::digits / 2, max_iter);
    AttenuationOptimum best{eta, -value};
    double unattenuated = visibility(topo.with_attenuation(1.0));
    if (unattenuated > best.visibility) {
        best = AttenuationOptimum{1.0, unattenuated};
    }
    return best;
}

double difference_variance(const Topology& topo, double phi) {
    SinglesPair s = singles_fringe_analytic(topo, phi);
    return s.n_plus + s.n_minus;
}

SnrResult snr_unconditional(const Topology& topo, double phi, SnrConvention convention) {
    require_two_spdc(topo, "snr_unconditional");
    const ObjectPort& obj = topo.object();
    double pedestal = (1.0 - obj.transmittance) * obj.thermal_photons * topo.crystal_b().gain;
    return make_snr(pair_snr(topo, phi, pedestal), convention);
}

SnrResult snr_heralded(const Topology& topo, double phi, HeraldLimit limit, SnrConvention convention) {
    require_two_spdc(topo, "snr_heralded");
    if (limit == HeraldLimit::Pair) {
        return make_snr(pair_snr(topo, phi, 0.0), convention);
    }
    // The "-" output is the "+" output at phi + pi/2.
    double plus = heralded_singles_mode_matched(topo, phi);
    double minus = heralded_singles_mode_matched(topo, phi + std::numbers::pi / 2.0);
    double mean = plus - minus;
    double variance = plus + minus;
    return make_snr(variance > 0.0 ? mean * mean / variance : 0.0, convention);
}

}  // namespace icl

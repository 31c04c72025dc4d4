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

#ifndef ICL_METRICS_HPP
#define ICL_METRICS_HPP

#include "icl/interferometer.hpp"

namespace icl {

/// PowerRatio: mean^2 / variance of the photon-number difference.
/// AmplitudeRatio: mean / standard deviation, i.e. sqrt(PowerRatio).
enum class SnrConvention { PowerRatio, AmplitudeRatio };

struct SnrResult {
    double value = 0.0;
    SnrConvention convention = SnrConvention::PowerRatio;

    SnrResult as(SnrConvention target) const;
};

enum class HeraldLimit { General, Pair };

/// Singles fringe visibility from the propagated engine state; 0 when there is no light.
double visibility(const Topology& topo);

/// Closed-form visibility of each topology.
double visibility_closed_form(const Topology& topo);

/// Visibility of the B-attenuated two-crystal interferometer at the best attenuation.
double optimal_attenuated_visibility(double transmittance, double gain_a, double thermal_photons);

struct AttenuationOptimum {
    double attenuation = 1.0;
    double visibility = 0.0;
};

/// Numerically maximises the engine visibility of `topo` (TwoSpdcAttenuated)
/// over its attenuation factor in [0, 1].
AttenuationOptimum maximize_visibility_over_attenuation(const Topology& topo);

/// Var(N+ - N-) = <N+> + <N->, assuming shot-noise statistics at both outputs.
double difference_variance(const Topology& topo, double phi);

SnrResult snr_unconditional(const Topology& topo, double phi,
                            SnrConvention convention = SnrConvention::PowerRatio);

/// General: 2 A_cond^2 cos^2(2 phi) / N_cond with the mode-matched conditional fringe.
/// Pair: 4 T (1 + V_A) V_A V_B cos^2(2 phi) / (V_A + V_B + T V_A V_B).
SnrResult snr_heralded(const Topology& topo, double phi, HeraldLimit limit,
                       SnrConvention convention = SnrConvention::PowerRatio);

}  // namespace icl

#endif  // ICL_METRICS_HPP

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

// Induced-coherence interferometer topologies.
//
// Mode layout shared by every topology:
//
//   0  A-signal    (crystal A signal; becomes the "-" output after the final splitter)
//   1  B-signal    (crystal B signal; becomes the "+" output)
//   2  idler       (A idler -> object port -> seeds crystal B -> detected idler)
//   3  thermal     (object-port auxiliary input, mean photon number N_B)
//   4  auxiliary   (attenuator vacuum port, or crystal C partner mode)
//
// Network order: crystal A on (0, 2); object port mixes 2 with 3; crystal B
// on (1, 2); optional attenuator on (1, 4) or crystal C on (0, 4); fringe
// phase 2*phi on mode 1; 50:50 splitter with 1 -> (a_1 + a_0)/sqrt2.
//
// Crystal C sits on the A-signal arm after crystal A and pairs mode 0 with
// the fresh vacuum mode 4: N_1 = (1 + V_C) V_A + V_C, and the A/B cross
// moment picks up a factor sqrt(1 + V_C).

#ifndef ICL_INTERFEROMETER_HPP
#define ICL_INTERFEROMETER_HPP

#include <functional>
#include <optional>

#include "icl/gaussian_state.hpp"
#include "icl/network.hpp"

namespace icl {

enum class TopologyKind { TwoSpdc, TwoSpdcAttenuated, ThreeSpdc };

const char* to_string(TopologyKind kind);

class Topology {
  public:
    static Topology two_spdc(SqueezerParams a, SqueezerParams b, ObjectPort object);
    /// `attenuation` is the intensity transmittance of the B-signal arm.
    static Topology two_spdc_attenuated(SqueezerParams a, SqueezerParams b, double attenuation,
                                        ObjectPort object);
    static Topology three_spdc(SqueezerParams a, SqueezerParams b, SqueezerParams c, ObjectPort object);

    TopologyKind kind() const { return kind_; }
    const SqueezerParams& crystal_a() const { return a_; }
    const SqueezerParams& crystal_b() const { return b_; }
    const std::optional<SqueezerParams>& crystal_c() const { return c_; }
    const std::optional<double>& attenuation() const { return attenuation_; }
    const ObjectPort& object() const { return object_; }

    Topology with_object(ObjectPort object) const;
    Topology with_attenuation(double attenuation) const;

  private:
    Topology(TopologyKind kind, SqueezerParams a, SqueezerParams b, std::optional<SqueezerParams> c,
             std::optional<double> attenuation, ObjectPort object);

    TopologyKind kind_;
    SqueezerParams a_;
    SqueezerParams b_;
    std::optional<SqueezerParams> c_;
    std::optional<double> attenuation_;
    ObjectPort object_;
};

namespace modes {
inline constexpr ModeId kSignalA{0};
inline constexpr ModeId kSignalB{1};
inline constexpr ModeId kIdler{2};
inline constexpr ModeId kThermal{3};
inline constexpr ModeId kAuxiliary{4};
/// After the final splitter.
inline constexpr ModeId kPlusPort{1};
inline constexpr ModeId kMinusPort{0};
inline constexpr ModeId kHerald{2};
}  // namespace modes

std::size_t mode_count(const Topology& topo);

/// Network up to (and including) the fringe phase element, before the final splitter.
Network build_pre_splitter_network(const Topology& topo, double phi);
/// Full network including the final 50:50 splitter.
Network build_network(const Topology& topo, double phi);

struct SinglesPair {
    double n_plus = 0.0;
    double n_minus = 0.0;
};

/// Closed-form singles N+-(phi). Crystal phases enter as cos(2 phi + theta_B - theta_A).
SinglesPair singles_fringe_analytic(const Topology& topo, double phi);
/// Singles read from the propagated Gaussian state.
SinglesPair singles_fringe_engine(const Topology& topo, double phi);

struct FringeResult {
    double dc = 0.0;
    double amplitude = 0.0;
    double visibility = 0.0;
};

/// Fits dc + a cos 2phi + b sin 2phi exactly from samples at phi = 0, pi/4, pi/2.
FringeResult fringe_from_samples(double at_0, double at_quarter, double at_half);
FringeResult fringe_from(const std::function<double(double)>& n_plus_of_phi);

FringeResult fringe_engine(const Topology& topo);
FringeResult fringe_analytic(const Topology& topo);

struct PreSplitterMoments {
    double n1 = 0.0;
    double n2 = 0.0;
    double coherence_mag = 0.0;  // |<a_1^dag a_2>|
};

/// Closed-form pre-splitter moments (TwoSpdc only).
PreSplitterMoments pre_splitter_moments(const Topology& topo);
/// Same quantities read from the engine state before the final splitter (TwoSpdc only).
PreSplitterMoments pre_splitter_moments_engine(const Topology& topo);

/// |g1| between the two signal modes before the splitter; independent of V_B (TwoSpdc only).
double g1_coherence(const Topology& topo);

}  // namespace icl

#endif  // ICL_INTERFEROMETER_HPP

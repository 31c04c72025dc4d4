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

// Idler-conditioned (heralded) signal statistics.
//
// The herald is the idler leaving crystal B (modes::kHerald); the heralded
// signal detector sits on the "+" output (modes::kPlusPort). The "-" output
// follows from phi -> phi + pi/2.
//
// Mode-matched heralding: the detected idler mode is assumed statistically
// independent of the thermal background, so the conditional analysis runs on
// the network with the object port's auxiliary input in vacuum. The
// shared-mode variant keeps the thermal field in the detected idler mode and
// is provided for comparison; it does depend on N_B.

#ifndef ICL_HERALDING_HPP
#define ICL_HERALDING_HPP

#include "icl/gaussian_state.hpp"
#include "icl/interferometer.hpp"

namespace icl {

/// On/off idler detector with quantum efficiency eta in (0, 1] and mean dark counts nu.
struct DetectorModel {
    double eta = 1.0;
    double nu = 0.0;

    DetectorModel() = default;
    DetectorModel(double eta, double nu);
};

struct HeraldedFringe {
    double dc = 0.0;         // conditional mean averaged over phi
    double amplitude = 0.0;  // cos(2 phi) amplitude
    double visibility = 0.0;
};

/// <n_I n_S> of a zero-mean Gaussian state via Isserlis:
/// <n_I><n_S> + |<a_I a_S>|^2 + |<a_I^dag a_S>|^2.
double joint_number_moment(const GaussianState& state, ModeId mode_i, ModeId mode_s);

/// <n_I n_S> / <n_I>. Throws NoHeraldEvents when <n_I> = 0.
double conditional_mean_wick(const GaussianState& state, ModeId mode_i, ModeId mode_s);

/// Low-brightness on/off POVM conditioning:
/// (eta <n_I n_S> + nu <n_S>) / (eta <n_I> + nu). Throws NoHeraldEvents when the
/// click probability vanishes.
double conditional_mean_povm(const GaussianState& state, ModeId mode_i, ModeId mode_s,
                             const DetectorModel& det);

/// Network used for mode-matched conditioning: the topology with N_B = 0.
Network mode_matched_network(const Topology& topo, double phi);

/// Heralded "+"-port mean at phase phi, mode-matched, ideal detector.
double heralded_singles_mode_matched(const Topology& topo, double phi);
double heralded_singles_mode_matched(const Topology& topo, double phi, const DetectorModel& det);

/// Mode-matched heralded fringe (TwoSpdc only), extracted from the engine.
HeraldedFringe heralded_fringe_mode_matched(const Topology& topo);

/// Heralded fringe with the thermal field sharing the detected idler mode.
HeraldedFringe heralded_fringe_shared_mode(const Topology& topo);

/// Closed-form herald moments of the mode-matched two-crystal network in the
/// textbook form. Its pair term leaves out the vacuum entering at the object
/// port, so it matches the engine exactly only at T = 1.
struct HeraldMoments {
    double n_idler = 0.0;          // <n_I> = U_B T V_A + V_B
    double n_signal = 0.0;         // <n_S>(phi)
    double pair_correlation = 0.0; // |<b_I b_S>|^2 (phi)
};
HeraldMoments herald_moments_closed_form(const Topology& topo, double phi);

/// Conditional DC and AC parts assembled from herald_moments_closed_form.
HeraldedFringe heralded_fringe_closed_form(const Topology& topo);

/// Pair-heralding limit 2 sqrt(T (1 + V_A) V_A V_B) / (V_A + V_B + T V_A V_B).
double heralded_visibility_pair_limit(const Topology& topo);

}  // namespace icl

#endif  // ICL_HERALDING_HPP

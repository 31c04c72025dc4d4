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

#ifndef ICL_NETWORK_HPP
#define ICL_NETWORK_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "icl/gaussian_state.hpp"

namespace icl {

struct TwoModeSqueezerElement {
    ModeId signal;
    ModeId idler;
    SqueezerParams params;
};

struct BeamSplitterElement {
    ModeId a;
    ModeId b;
    double t = 1.0;
    double r = 0.0;
};

struct PhaseElement {
    ModeId mode;
    double phi = 0.0;
};

using Element = std::variant<TwoModeSqueezerElement, BeamSplitterElement, PhaseElement>;

/// An ordered list of passive and parametric elements acting on n modes.
/// Every input mode starts in vacuum except those listed with a non-zero
/// thermal occupation. Both the Gaussian engine and the Fock oracle consume
/// this description.
struct Network {
    std::size_t n_modes = 0;
    std::vector<double> thermal_inputs;  // per mode, mean photon number (0 = vacuum)
    std::vector<Element> elements;

    explicit Network(std::size_t n_modes = 0);

    Network& thermal(ModeId mode, double n_bar);
    Network& squeezer(ModeId signal, ModeId idler, const SqueezerParams& p);
    Network& beam_splitter(ModeId a, ModeId b, double t, double r);
    /// Beam splitter of intensity transmittance `transmittance`.
    Network& loss(ModeId a, ModeId b, double transmittance);
    Network& phase(ModeId mode, double phi);

    bool has_thermal_input() const;
};

GaussianState initial_state(const Network& net);
GaussianState apply_element(const GaussianState& state, const Element& element);
GaussianState run(const Network& net);

}  // namespace icl

#endif  // ICL_NETWORK_HPP

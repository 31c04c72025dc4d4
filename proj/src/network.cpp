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

#include "icl/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace icl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Network::Network(std::size_t n_modes) : n_modes(n_modes), thermal_inputs(n_modes, 0.0) {}

Network& Network::thermal(ModeId mode, double n_bar) {
    if (mode.index >= n_modes) {
        throw std::out_of_range("thermal input on a mode outside the network");
    }
    if (!(n_bar >= 0.0)) {
        throw std::invalid_argument("thermal photon number must be non-negative");
    }
    thermal_inputs[mode.index] = n_bar;
    return *this;
}

Network& Network::squeezer(ModeId signal, ModeId idler, const SqueezerParams& p) {
    elements.emplace_back(TwoModeSqueezerElement{signal, idler, p});
    return *this;
}

Network& Network::beam_splitter(ModeId a, ModeId b, double t, double r) {
    elements.emplace_back(BeamSplitterElement{a, b, t, r});
    return *this;
}

Network& Network::loss(ModeId a, ModeId b, double transmittance) {
    return beam_splitter(a, b, std::sqrt(transmittance), std::sqrt(1.0 - transmittance));
}

Network& Network::phase(ModeId mode, double phi) {
    elements.emplace_back(PhaseElement{mode, phi});
    return *this;
}

bool Network::has_thermal_input() const {
    return std::any_of(thermal_inputs.begin(), thermal_inputs.end(), [](double n) { return n > 0.0; });
}

GaussianState initial_state(const Network& net) {
    GaussianState state = new_vacuum(net.n_modes);
    for (std::size_t m = 0; m < net.n_modes; ++m) {
        if (net.thermal_inputs[m] > 0.0) {
            state = set_thermal(state, ModeId{m}, net.thermal_inputs[m]);
        }
    }
    return state;
}

GaussianState apply_element(const GaussianState& state, const Element& element) {
    return std::visit(
        overloaded{
            [&](const TwoModeSqueezerElement& e) {
                return apply_two_mode_squeezer(state, e.signal, e.idler, e.params);
            },
            [&](const BeamSplitterElement& e) { return apply_beam_splitter(state, e.a, e.b, e.t, e.r); },
            [&](const PhaseElement& e) { return apply_phase(state, e.mode, e.phi); },
        },
        element);
}

GaussianState run(const Network& net) {
    GaussianState state = initial_state(net);
    for (const auto& element : net.elements) {
        state = apply_element(state, element);
    }
    return state;
}

}  // namespace icl

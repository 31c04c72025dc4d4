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

#include "icl/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace icl {

namespace {

void require_mode(const GaussianState& state, ModeId mode) {
    if (mode.index >= state.n_modes()) {
        throw std::out_of_range("mode " + std::to_string(mode.index) + " out of range for " +
                                std::to_string(state.n_modes()) + "-mode state");
    }
}

// Identity map on 2n stacked operators.
Eigen::MatrixXcd identity_map(std::size_t n) {
    return Eigen::MatrixXcd::Identity(2 * static_cast<Eigen::Index>(n), 2 * static_cast<Eigen::Index>(n));
}

// Sets X(row, col) and the mirrored conj(X) block entry.
void set_x(Eigen::MatrixXcd& s, std::size_t n, std::size_t row, std::size_t col, cplx value) {
    auto r = static_cast<Eigen::Index>(row);
    auto c = static_cast<Eigen::Index>(col);
    auto off = static_cast<Eigen::Index>(n);
    s(r, c) = value;
    s(r + off, c + off) = std::conj(value);
}

// Sets Y(row, col): coefficient of a_col^dag in a_row'.
void set_y(Eigen::MatrixXcd& s, std::size_t n, std::size_t row, std::size_t col, cplx value) {
    auto r = static_cast<Eigen::Index>(row);
    auto c = static_cast<Eigen::Index>(col);
    auto off = static_cast<Eigen::Index>(n);
    s(r, c + off) = value;
    s(r + off, c) = std::conj(value);
}

}  // namespace

SqueezerParams::SqueezerParams(double gain, double phase) : gain(gain), phase(phase) {
    if (!(gain >= 0.0) || !std::isfinite(gain)) {
        throw std::invalid_argument("squeezer gain V must be finite and non-negative");
    }
}

double SqueezerParams::u() const { return std::sqrt(1.0 + gain); }

cplx SqueezerParams::v() const { return std::polar(std::sqrt(gain), phase); }

ObjectPort::ObjectPort(double transmittance, double thermal_photons)
    : transmittance(transmittance), thermal_photons(thermal_photons) {
    if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
        throw std::invalid_argument("object transmittance T must lie in [0, 1]");
    }
    if (!(thermal_photons >= 0.0) || !std::isfinite(thermal_photons)) {
        throw std::invalid_argument("thermal photon number N_B must be finite and non-negative");
    }
}

GaussianState GaussianState::vacuum(std::size_t n_modes) {
    if (n_modes == 0) {
        throw std::invalid_argument("a Gaussian state needs at least one mode");
    }
    auto n = static_cast<Eigen::Index>(n_modes);
    return GaussianState(Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n));
}

GaussianState::GaussianState(Eigen::MatrixXcd normal, Eigen::MatrixXcd anomalous)
    : normal_(std::move(normal)), anomalous_(std::move(anomalous)) {
    if (normal_.rows() == 0 || normal_.rows() != normal_.cols() || anomalous_.rows() != normal_.rows() ||
        anomalous_.cols() != normal_.cols()) {
        throw std::invalid_argument("moment matrices must be square, non-empty and of equal size");
    }
}

Eigen::MatrixXcd GaussianState::stacked_moments() const {
    auto n = normal_.rows();
    Eigen::MatrixXcd g(2 * n, 2 * n);
    g.topLeftCorner(n, n) = anomalous_;
    g.topRightCorner(n, n) = Eigen::MatrixXcd::Identity(n, n) + normal_.transpose();
    g.bottomLeftCorner(n, n) = normal_;
    g.bottomRightCorner(n, n) = anomalous_.conjugate();
    return g;
}

GaussianState GaussianState::from_stacked_moments(const Eigen::MatrixXcd& g) {
    auto n = g.rows() / 2;
    return GaussianState(g.bottomLeftCorner(n, n), g.topLeftCorner(n, n));
}

Eigen::MatrixXcd GaussianState::commutator_offset_matrix() const {
    auto n = normal_.rows();
    Eigen::MatrixXcd r(2 * n, 2 * n);
    r.topLeftCorner(n, n) = Eigen::MatrixXcd::Identity(n, n) + normal_.transpose();
    r.topRightCorner(n, n) = anomalous_;
    r.bottomLeftCorner(n, n) = anomalous_.conjugate();
    r.bottomRightCorner(n, n) = normal_;
    return r;
}

double GaussianState::min_physicality_eigenvalue() const {
    Eigen::MatrixXcd r = commutator_offset_matrix();
    // Symmetrise before the eigen solve.
    Eigen::MatrixXcd h = 0.5 * (r + r.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool GaussianState::is_physical(double tol) const {
    if (max_asymmetry() > 1e-12 * std::max(1.0, normal_.cwiseAbs().maxCoeff())) {
        return false;
    }
    for (Eigen::Index i = 0; i < normal_.rows(); ++i) {
        if (normal_(i, i).real() < -tol) {
            return false;
        }
    }
    return min_physicality_eigenvalue() >= -tol;
}

double GaussianState::max_asymmetry() const {
    double herm = (normal_ - normal_.adjoint()).cwiseAbs().maxCoeff();
    double sym = (anomalous_ - anomalous_.transpose()).cwiseAbs().maxCoeff();
    return std::max(herm, sym);
}

GaussianState new_vacuum(std::size_t n_modes) { return GaussianState::vacuum(n_modes); }

GaussianState set_thermal(const GaussianState& state, ModeId mode, double n_bar) {
    require_mode(state, mode);
    if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
        throw std::invalid_argument("thermal photon number must be finite and non-negative");
    }
    auto m = static_cast<Eigen::Index>(mode.index);
    const auto& normal = state.normal();
    const auto& anomalous = state.anomalous();
    for (Eigen::Index k = 0; k < normal.rows(); ++k) {
        bool cross = k != m && (normal(m, k) != 0.0 || normal(k, m) != 0.0);
        if (cross || anomalous(m, k) != 0.0 || anomalous(k, m) != 0.0) {
            throw std::invalid_argument("set_thermal requires a mode uncorrelated with all others");
        }
    }
    Eigen::MatrixXcd out = normal;
    out(m, m) = n_bar;
    return GaussianState(std::move(out), anomalous);
}

GaussianState apply_bogoliubov(const GaussianState& state, const Eigen::MatrixXcd& s) {
    auto dim = 2 * static_cast<Eigen::Index>(state.n_modes());
    if (s.rows() != dim || s.cols() != dim) {
        throw std::invalid_argument("Bogoliubov map has the wrong dimension");
    }
    Eigen::MatrixXcd g = s * state.stacked_moments() * s.transpose();
    return GaussianState::from_stacked_moments(g);
}

GaussianState apply_two_mode_squeezer(const GaussianState& state, ModeId mode_s, ModeId mode_i,
                                      const SqueezerParams& p) {
    require_mode(state, mode_s);
    require_mode(state, mode_i);
    if (mode_s == mode_i) {
        throw std::invalid_argument("two-mode squeezer needs two distinct modes");
    }
    auto n = state.n_modes();
    Eigen::MatrixXcd s = identity_map(n);
    set_x(s, n, mode_s.index, mode_s.index, p.u());
    set_x(s, n, mode_i.index, mode_i.index, p.u());
    set_y(s, n, mode_s.index, mode_i.index, p.v());
    set_y(s, n, mode_i.index, mode_s.index, p.v());
    return apply_bogoliubov(state, s);
}

GaussianState apply_beam_splitter(const GaussianState& state, ModeId mode_a, ModeId mode_b, double t,
                                  double r) {
    require_mode(state, mode_a);
    require_mode(state, mode_b);
    if (mode_a == mode_b) {
        throw std::invalid_argument("beam splitter needs two distinct modes");
    }
    if (std::abs(t * t + r * r - 1.0) > 1e-12) {
        throw std::invalid_argument("beam splitter amplitudes must satisfy t^2 + r^2 = 1");
    }
    auto n = state.n_modes();
    Eigen::MatrixXcd s = identity_map(n);
    set_x(s, n, mode_a.index, mode_a.index, t);
    set_x(s, n, mode_a.index, mode_b.index, r);
    set_x(s, n, mode_b.index, mode_b.index, t);
    set_x(s, n, mode_b.index, mode_a.index, -r);
    return apply_bogoliubov(state, s);
}

GaussianState apply_phase(const GaussianState& state, ModeId mode, double phi) {
    require_mode(state, mode);
    auto n = state.n_modes();
    Eigen::MatrixXcd s = identity_map(n);
    set_x(s, n, mode.index, mode.index, std::polar(1.0, phi));
    return apply_bogoliubov(state, s);
}

double mean_photon_number(const GaussianState& state, ModeId mode) {
    require_mode(state, mode);
    auto m = static_cast<Eigen::Index>(mode.index);
    cplx value = state.normal()(m, m);
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real()))) {
        throw std::logic_error("photon number has a non-negligible imaginary part");
    }
    return value.real();
}

cplx cross_moment(const GaussianState& state, ModeId i, ModeId j, MomentKind kind) {
    require_mode(state, i);
    require_mode(state, j);
    auto a = static_cast<Eigen::Index>(i.index);
    auto b = static_cast<Eigen::Index>(j.index);
    return kind == MomentKind::Normal ? state.normal()(a, b) : state.anomalous()(a, b);
}

}  // namespace icl

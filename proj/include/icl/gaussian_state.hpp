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

#ifndef ICL_GAUSSIAN_STATE_HPP
#define ICL_GAUSSIAN_STATE_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace icl {

using cplx = std::complex<double>;

/// Index of one bosonic mode inside a state or network.
struct ModeId {
    std::size_t index = 0;

    constexpr ModeId() = default;
    constexpr explicit ModeId(std::size_t i) : index(i) {}
    friend constexpr bool operator==(ModeId, ModeId) = default;
};

/// Gain and phase of one parametric down-conversion crystal, modelled as a
/// two-mode squeezer a_s -> u a_s + v a_i^dag with u = sqrt(1 + V),
/// v = sqrt(V) exp(i theta).
struct SqueezerParams {
    double gain = 0.0;   // V = |v|^2
    double phase = 0.0;  // theta

    SqueezerParams() = default;
    SqueezerParams(double gain, double phase = 0.0);

    double big_u() const { return 1.0 + gain; }
    double u() const;
    cplx v() const;
};

/// Lossy object modelled as a beam splitter with intensity transmittance T
/// that mixes a thermal mode of mean photon number N_B into the idler.
struct ObjectPort {
    double transmittance = 1.0;     // T
    double thermal_photons = 0.0;   // N_B

    ObjectPort() = default;
    ObjectPort(double transmittance, double thermal_photons);

    double reflectance() const { return 1.0 - transmittance; }
};

enum class MomentKind { Normal, Anomalous };

/// Second moments of an n-mode zero-mean Gaussian field.
///
/// normal(i, j) = <a_i^dag a_j>, anomalous(i, j) = <a_i a_j>. Instances are
/// immutable values; every operation below returns a new state.
class GaussianState {
  public:
    static GaussianState vacuum(std::size_t n_modes);

    GaussianState(Eigen::MatrixXcd normal, Eigen::MatrixXcd anomalous);

    std::size_t n_modes() const { return static_cast<std::size_t>(normal_.rows()); }
    const Eigen::MatrixXcd& normal() const { return normal_; }
    const Eigen::MatrixXcd& anomalous() const { return anomalous_; }

    /// <xi xi^T> for the stacked vector xi = (a_1..a_n, a_1^dag..a_n^dag).
    Eigen::MatrixXcd stacked_moments() const;
    static GaussianState from_stacked_moments(const Eigen::MatrixXcd& g);

    /// <xi xi^dag>; positive semidefinite for every physical state.
    Eigen::MatrixXcd commutator_offset_matrix() const;
    double min_physicality_eigenvalue() const;
    bool is_physical(double tol = 1e-9) const;

    /// Largest violation of M = M^dag and A = A^T.
    double max_asymmetry() const;

  private:
    Eigen::MatrixXcd normal_;
    Eigen::MatrixXcd anomalous_;
};

GaussianState new_vacuum(std::size_t n_modes);

/// Puts an uncorrelated mode into a thermal state with mean photon number n_bar.
GaussianState set_thermal(const GaussianState& state, ModeId mode, double n_bar);

/// Applies xi -> S xi where S = [[X, Y], [conj(Y), conj(X)]] acts on the
/// stacked (a, a^dag) vector. Every network element funnels through here.
GaussianState apply_bogoliubov(const GaussianState& state, const Eigen::MatrixXcd& s);

GaussianState apply_two_mode_squeezer(const GaussianState& state, ModeId mode_s, ModeId mode_i,
                                      const SqueezerParams& p);

/// a -> t a + r b, b -> t b - r a. Requires t^2 + r^2 = 1 within 1e-12.
GaussianState apply_beam_splitter(const GaussianState& state, ModeId mode_a, ModeId mode_b, double t,
                                  double r);

/// a -> exp(i phi) a.
GaussianState apply_phase(const GaussianState& state, ModeId mode, double phi);

double mean_photon_number(const GaussianState& state, ModeId mode);

/// normal: <a_i^dag a_j>; anomalous: <a_i a_j>.
cplx cross_moment(const GaussianState& state, ModeId i, ModeId j, MomentKind kind);

}  // namespace icl

#endif  // ICL_GAUSSIAN_STATE_HPP

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

// Brute-force truncated Fock-space simulator used as an independent check of
// the Gaussian engine.
//
// Every element of a Network is the matrix exponential of its truncated
// generator acting on a state vector, e.g. exp(z a^dag b^dag - z* a b) for a
// squeezer. Thermal inputs go through the Glauber P-representation: each
// Monte-Carlo sample injects a coherent state |alpha> with alpha drawn from a
// circular Gaussian of mean |alpha|^2 = N_B. Samples are seeded from
// (seed, index) and reduced in index order.

#ifndef ICL_FOCK_ORACLE_HPP
#define ICL_FOCK_ORACLE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "icl/gaussian_state.hpp"
#include "icl/network.hpp"

namespace icl::fock {

struct FockConfig {
    std::size_t cutoff = 10;       // max photons per mode, inclusive
    std::size_t n_modes = 0;       // 0: take the network's mode count
    std::size_t mc_samples = 1000; // coherent-amplitude samples when a thermal port is present
    std::uint64_t seed = 0;

    double max_gain = 0.3;         // squeezer gain guard
    double max_thermal = 1.0;      // thermal occupation guard
    double max_leakage = 1e-6;     // ensemble truncation-leakage guard

    static constexpr double kMaxDimension = 1e7;

    /// Throws ResourceError when (cutoff + 1)^modes exceeds kMaxDimension.
    void validate(std::size_t network_modes) const;
};

struct OracleEstimate {
    double value = 0.0;
    double std_error = 0.0;  // zero when no Monte-Carlo sampling was involved
};

struct ComplexEstimate {
    OracleEstimate real;
    OracleEstimate imag;

    cplx value() const { return {real.value, imag.value}; }
};

/// Pure state of n truncated bosonic modes; mode 0 varies fastest in the flat index.
class FockState {
  public:
    FockState(std::size_t n_modes, std::size_t cutoff);

    /// Product state from one amplitude vector (length cutoff + 1) per mode.
    static FockState product(const std::vector<std::vector<cplx>>& per_mode, std::size_t cutoff);
    static FockState basis(std::span<const std::size_t> occupation, std::size_t cutoff);

    std::size_t n_modes() const { return n_modes_; }
    std::size_t cutoff() const { return levels_ - 1; }
    std::size_t levels() const { return levels_; }
    std::size_t dimension() const { return amps_.size(); }
    std::size_t stride(std::size_t mode) const { return strides_[mode]; }
    std::size_t occupation(std::size_t flat, std::size_t mode) const { return (flat / strides_[mode]) % levels_; }

    std::vector<cplx>& amplitudes() { return amps_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    cplx amplitude(std::span<const std::size_t> occupation) const;

    double norm_squared() const;

    /// a_mode |psi> (truncated: the top level maps to nothing outside the space).
    std::vector<cplx> annihilate(std::size_t mode) const;
    std::vector<cplx> annihilate(std::size_t mode, const std::vector<cplx>& vec) const;

  private:
    std::size_t n_modes_;
    std::size_t levels_;
    std::vector<std::size_t> strides_;
    std::vector<cplx> amps_;
};

/// Two-mode element restricted to the truncated space, stored column-sparse.
/// The exponential is taken on a padded space and cut back to the cutoff, so
/// the matrix is a contraction whose missing norm is the truncation leakage.
class TwoModeUnitary {
  public:
    static TwoModeUnitary squeezer(std::size_t cutoff, const SqueezerParams& p);
    static TwoModeUnitary beam_splitter(std::size_t cutoff, double t, double r);

    const Eigen::MatrixXcd& matrix() const { return dense_; }
    /// Applies the element to modes (p, q) of `state` in place. Returns the
    /// norm pushed past the cutoff.
    double apply(FockState& state, std::size_t p, std::size_t q) const;

  private:
    enum class Kind { Squeezer, BeamSplitter };
    TwoModeUnitary(Kind kind, std::size_t cutoff, const Eigen::MatrixXcd& generator, double strength);
    static std::size_t padded_levels(std::size_t cutoff);

    Kind kind_;
    std::size_t levels_;
    double strength_;
    Eigen::MatrixXcd dense_;
    std::vector<std::vector<std::pair<std::size_t, cplx>>> columns_;
};

void apply_phase(FockState& state, std::size_t mode, double phi);

/// Expectation values of one state, caching a_j |psi>.
class MomentEvaluator {
  public:
    explicit MomentEvaluator(const FockState& state);

    cplx mean(std::size_t i);                       // <a_i>
    double number(std::size_t i);                   // <n_i>
    cplx normal(std::size_t i, std::size_t j);      // <a_i^dag a_j>
    cplx anomalous(std::size_t i, std::size_t j);   // <a_i a_j>
    double number_product(std::size_t i, std::size_t j);  // <n_i n_j>

  private:
    const std::vector<cplx>& lowered(std::size_t j);
    const std::vector<double>& counts(std::size_t i);

    const FockState& state_;
    std::vector<std::vector<cplx>> lowered_;
    std::vector<bool> have_;
    std::vector<std::vector<double>> counts_;
};

struct SimulationSummary {
    std::size_t samples = 0;
    bool stochastic = false;
    double mean_leakage = 0.0;  // ensemble-average truncated norm
};

/// Called once per sample with the final state. May run concurrently on
/// worker threads, always with distinct sample indices.
using SampleVisitor = std::function<void(std::size_t sample, const FockState& state)>;

/// Runs `net` on truncated Fock vectors, once per coherent-amplitude sample
/// (or once when no input is thermal). Throws TruncationError when the
/// ensemble-average leakage exceeds cfg.max_leakage.
SimulationSummary simulate_network(const FockConfig& cfg, const Network& net, const SampleVisitor& visit);

/// Collects the final states; intended for small sample counts.
std::vector<FockState> simulate_states(const FockConfig& cfg, const Network& net);

/// Applies the network's elements to an explicit input state.
double evolve(FockState& state, const Network& net);

/// Coherent-state amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..cutoff.
std::vector<cplx> coherent_amplitudes(cplx alpha, std::size_t cutoff);

/// The complex amplitudes injected into the thermal ports for one sample.
std::vector<cplx> thermal_sample(const Network& net, std::uint64_t seed, std::size_t sample);

enum class OracleMoment { Mean, Number, Normal, Anomalous, NumberProduct };

struct MomentQuery {
    OracleMoment kind;
    ModeId i;
    ModeId j{};
};

/// Per-sample real observables with estimators for means and smooth functions of means.
class SampleTable {
  public:
    SampleTable(std::size_t columns, std::size_t samples, bool stochastic);

    double& at(std::size_t sample, std::size_t column) { return data_[sample * columns_ + column]; }
    double at(std::size_t sample, std::size_t column) const { return data_[sample * columns_ + column]; }
    std::size_t samples() const { return samples_; }
    std::size_t columns() const { return columns_; }
    bool stochastic() const { return stochastic_; }

    std::vector<double> means() const;
    OracleEstimate mean(std::size_t column) const;
    /// f(means) with a delta-method standard error.
    OracleEstimate derived(const std::function<double(std::span<const double>)>& f) const;

  private:
    std::size_t columns_;
    std::size_t samples_;
    bool stochastic_;
    std::vector<double> data_;
};

using RowFunction = std::function<void(MomentEvaluator& eval, std::span<double> row)>;

SampleTable sample_table(const FockConfig& cfg, const Network& net, std::size_t columns,
                         const RowFunction& row);

std::vector<ComplexEstimate> oracle_moments(const FockConfig& cfg, const Network& net,
                                            std::span<const MomentQuery> queries);
ComplexEstimate oracle_moment(const FockConfig& cfg, const Network& net, const MomentQuery& query);

/// <n_I n_S> / <n_I> over the ensemble (ratio of averages). Throws
/// NoHeraldEvents when the herald rate is zero.
OracleEstimate oracle_conditional(const FockConfig& cfg, const Network& net, ModeId mode_i, ModeId mode_s);

/// <n_I n_S> - (<n_I><n_S> + |<a_I a_S>|^2 + |<a_I^dag a_S>|^2) over the ensemble.
OracleEstimate oracle_wick_residual(const FockConfig& cfg, const Network& net, ModeId mode_i, ModeId mode_s);

}  // namespace icl::fock

#endif  // ICL_FOCK_ORACLE_HPP

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

#include "icl/fock_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "icl/errors.hpp"

namespace icl::fock {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Two-mode basis index: n_p + levels * n_q.
std::size_t pair_index(std::size_t np, std::size_t nq, std::size_t levels) { return np + levels * nq; }

// Flat indices with zero occupation in modes p and q.
std::vector<std::size_t> outer_bases(const FockState& state, std::size_t p, std::size_t q) {
    std::vector<std::size_t> others;
    for (std::size_t m = 0; m < state.n_modes(); ++m) {
        if (m != p && m != q) {
            others.push_back(m);
        }
    }
    std::vector<std::size_t> bases;
    bases.reserve(state.dimension() / (state.levels() * state.levels()));
    std::vector<std::size_t> digits(others.size(), 0);
    std::size_t base = 0;
    while (true) {
        bases.push_back(base);
        std::size_t k = 0;
        for (; k < others.size(); ++k) {
            base += state.stride(others[k]);
            if (++digits[k] < state.levels()) {
                break;
            }
            base -= state.levels() * state.stride(others[k]);
            digits[k] = 0;
        }
        if (k == others.size()) {
            break;
        }
    }
    return bases;
}

// Calls f(flat, n) for every basis index, n being the occupation of `mode`.
template <typename F>
void for_each_level(const FockState& state, std::size_t mode, F f) {
    const std::size_t stride = state.stride(mode);
    const std::size_t levels = state.levels();
    const std::size_t block = stride * levels;
    for (std::size_t outer = 0; outer < state.dimension(); outer += block) {
        for (std::size_t n = 0; n < levels; ++n) {
            const std::size_t base = outer + n * stride;
            for (std::size_t inner = 0; inner < stride; ++inner) {
                f(base + inner, n);
            }
        }
    }
}

// One element bound to concrete modes, ready to act on sample states.
struct PreparedElement {
    enum class Kind { TwoMode, Phase } kind;
    std::size_t p = 0;
    std::size_t q = 0;
    double phi = 0.0;
    const TwoModeUnitary* unitary = nullptr;
};

struct PreparedNetwork {
    std::vector<TwoModeUnitary> unitaries;
    std::vector<PreparedElement> elements;
};

PreparedNetwork prepare(const Network& net, std::size_t cutoff) {
    PreparedNetwork prepared;
    prepared.unitaries.reserve(net.elements.size());
    for (const auto& element : net.elements) {
        std::visit(overloaded{
                       [&](const TwoModeSqueezerElement& e) {
                           prepared.unitaries.push_back(TwoModeUnitary::squeezer(cutoff, e.params));
                       },
                       [&](const BeamSplitterElement& e) {
                           prepared.unitaries.push_back(TwoModeUnitary::beam_splitter(cutoff, e.t, e.r));
                       },
                       [&](const PhaseElement&) {},
                   },
                   element);
    }
    std::size_t next = 0;
    for (const auto& element : net.elements) {
        std::visit(overloaded{
                       [&](const TwoModeSqueezerElement& e) {
                           prepared.elements.push_back({PreparedElement::Kind::TwoMode, e.signal.index,
                                                        e.idler.index, 0.0, &prepared.unitaries[next++]});
                       },
                       [&](const BeamSplitterElement& e) {
                           prepared.elements.push_back({PreparedElement::Kind::TwoMode, e.a.index, e.b.index, 0.0,
                                                        &prepared.unitaries[next++]});
                       },
                       [&](const PhaseElement& e) {
                           prepared.elements.push_back({PreparedElement::Kind::Phase, e.mode.index, 0, e.phi, nullptr});
                       },
                   },
                   element);
    }
    return prepared;
}

double run_prepared(FockState& state, const PreparedNetwork& prepared) {
    double leakage = 0.0;
    for (const auto& e : prepared.elements) {
        if (e.kind == PreparedElement::Kind::Phase) {
            apply_phase(state, e.p, e.phi);
        } else {
            leakage += e.unitary->apply(state, e.p, e.q);
        }
    }
    return leakage;
}

void check_network(const FockConfig& cfg, const Network& net) {
    cfg.validate(net.n_modes);
    for (const auto& element : net.elements) {
        if (const auto* sq = std::get_if<TwoModeSqueezerElement>(&element)) {
            if (sq->params.gain > cfg.max_gain) {
                throw std::invalid_argument("squeezer gain " + std::to_string(sq->params.gain) +
                                            " exceeds the oracle guard " + std::to_string(cfg.max_gain));
            }
        }
    }
    for (double n : net.thermal_inputs) {
        if (n > cfg.max_thermal) {
            throw std::invalid_argument("thermal occupation " + std::to_string(n) + " exceeds the oracle guard " +
                                        std::to_string(cfg.max_thermal));
        }
    }
}

// Input state for one sample: vacuum everywhere except coherent states on thermal ports.
// Returns the norm lost to truncating those coherent states.
double input_state(const Network& net, std::size_t cutoff, std::span<const cplx> alphas, FockState& out) {
    std::vector<std::vector<cplx>> per_mode(net.n_modes);
    double lost = 0.0;
    std::size_t k = 0;
    for (std::size_t m = 0; m < net.n_modes; ++m) {
        if (net.thermal_inputs[m] > 0.0) {
            per_mode[m] = coherent_amplitudes(alphas[k++], cutoff);
            double kept = 0.0;
            for (const auto& c : per_mode[m]) {
                kept += std::norm(c);
            }
            lost += 1.0 - kept;
        } else {
            per_mode[m].assign(cutoff + 1, cplx{});
            per_mode[m][0] = 1.0;
        }
    }
    out = FockState::product(per_mode, cutoff);
    return lost;
}

template <class Fn>
void parallel_samples(std::size_t count, Fn&& fn) {
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
    if (workers == 1) {
        for (std::size_t s = 0; s < count; ++s) {
            fn(s);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t s = next++; s < count; s = next++) {
                fn(s);
            }
        });
    }
}

}  // namespace

void FockConfig::validate(std::size_t network_modes) const {
    if (cutoff == 0) {
        throw std::invalid_argument("Fock cutoff must be positive");
    }
    if (mc_samples == 0) {
        throw std::invalid_argument("at least one Monte-Carlo sample is required");
    }
    if (n_modes != 0 && network_modes > n_modes) {
        throw std::invalid_argument("network has more modes than the oracle configuration allows");
    }
    std::size_t modes = std::max(n_modes, network_modes);
    if (std::pow(static_cast<double>(cutoff + 1), static_cast<double>(modes)) > kMaxDimension) {
        throw ResourceError("Fock space of " + std::to_string(modes) + " modes at cutoff " + std::to_string(cutoff) +
                            " exceeds the dimension guard");
    }
}

FockState::FockState(std::size_t n_modes, std::size_t cutoff)
    : n_modes_(n_modes), levels_(cutoff + 1), strides_(n_modes) {
    if (n_modes == 0) {
        throw std::invalid_argument("a Fock state needs at least one mode");
    }
    std::size_t dim = 1;
    for (std::size_t m = 0; m < n_modes; ++m) {
        strides_[m] = dim;
        dim *= levels_;
    }
    amps_.assign(dim, cplx{});
    amps_[0] = 1.0;
}

FockState FockState::product(const std::vector<std::vector<cplx>>& per_mode, std::size_t cutoff) {
    FockState state(per_mode.size(), cutoff);
    auto& amps = state.amps_;
    std::fill(amps.begin(), amps.end(), cplx{});
    // Only modes with support beyond the vacuum need to be enumerated.
    std::vector<std::size_t> active;
    cplx vacuum_factor = 1.0;
    for (std::size_t m = 0; m < per_mode.size(); ++m) {
        if (per_mode[m].size() != state.levels_) {
            throw std::invalid_argument("per-mode amplitude vector has the wrong length");
        }
        bool excited = std::any_of(per_mode[m].begin() + 1, per_mode[m].end(), [](cplx c) { return c != 0.0; });
        if (excited) {
            active.push_back(m);
        } else {
            vacuum_factor *= per_mode[m][0];
        }
    }
    std::vector<std::size_t> digits(active.size(), 0);
    while (true) {
        std::size_t flat = 0;
        cplx value = vacuum_factor;
        for (std::size_t k = 0; k < active.size(); ++k) {
            flat += digits[k] * state.strides_[active[k]];
            value *= per_mode[active[k]][digits[k]];
        }
        amps[flat] = value;
        std::size_t k = 0;
        while (k < active.size() && ++digits[k] == state.levels_) {
            digits[k++] = 0;
        }
        if (k == active.size()) {
            break;
        }
    }
    return state;
}

FockState FockState::basis(std::span<const std::size_t> occupation, std::size_t cutoff) {
    FockState state(occupation.size(), cutoff);
    state.amps_[0] = 0.0;
    std::size_t flat = 0;
    for (std::size_t m = 0; m < occupation.size(); ++m) {
        if (occupation[m] > cutoff) {
            throw std::invalid_argument("occupation above the cutoff");
        }
        flat += occupation[m] * state.strides_[m];
    }
    state.amps_[flat] = 1.0;
    return state;
}

cplx FockState::amplitude(std::span<const std::size_t> occupation) const {
    std::size_t flat = 0;
    for (std::size_t m = 0; m < n_modes_; ++m) {
        flat += occupation[m] * strides_[m];
    }
    return amps_.at(flat);
}

double FockState::norm_squared() const {
    double sum = 0.0;
    for (const auto& c : amps_) {
        sum += std::norm(c);
    }
    return sum;
}

std::vector<cplx> FockState::annihilate(std::size_t mode) const { return annihilate(mode, amps_); }

std::vector<cplx> FockState::annihilate(std::size_t mode, const std::vector<cplx>& vec) const {
    std::vector<cplx> out(vec.size(), cplx{});
    const std::size_t stride = strides_[mode];
    for_each_level(*this, mode, [&](std::size_t flat, std::size_t n) {
        if (n + 1 < levels_) {
            out[flat] = std::sqrt(static_cast<double>(n + 1)) * vec[flat + stride];
        }
    });
    return out;
}

TwoModeUnitary::TwoModeUnitary(Kind kind, std::size_t cutoff, const Eigen::MatrixXcd& generator, double strength)
    : kind_(kind), levels_(cutoff + 1), strength_(strength) {
    // Exponentiated on 2 * cutoff + 1 levels per mode, then cut back to the cutoff block.
    const std::size_t d = levels_;
    const std::size_t padded = padded_levels(cutoff);
    auto conserved_in = [&](std::size_t k, std::size_t levels) {
        auto np = static_cast<long>(k % levels);
        auto nq = static_cast<long>(k / levels);
        return kind_ == Kind::Squeezer ? np - nq : np + nq;
    };
    // The generator is block diagonal in the conserved quantity; exponentiate block by block.
    std::map<long, std::vector<Eigen::Index>> blocks;
    for (std::size_t k = 0; k < padded * padded; ++k) {
        blocks[conserved_in(k, padded)].push_back(static_cast<Eigen::Index>(k));
    }
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(generator.rows(), generator.cols());
    for (const auto& [key, idx] : blocks) {
        auto n = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXcd sub(n, n);
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                sub(a, b) = generator(idx[a], idx[b]);
            }
        }
        Eigen::MatrixXcd e = sub.exp();
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                full(idx[a], idx[b]) = e(a, b);
            }
        }
    }
    auto dim = d * d;
    dense_.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t l = 0; l < dim; ++l) {
        for (std::size_t k = 0; k < dim; ++k) {
            auto row = static_cast<Eigen::Index>(pair_index(k % d, k / d, padded));
            auto col = static_cast<Eigen::Index>(pair_index(l % d, l / d, padded));
            dense_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = full(row, col);
        }
    }
    columns_.resize(dim);
    for (std::size_t l = 0; l < dim; ++l) {
        for (std::size_t k = 0; k < dim; ++k) {
            cplx u = dense_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
            if (u != 0.0) {
                columns_[l].emplace_back(k, u);
            }
        }
    }
}

std::size_t TwoModeUnitary::padded_levels(std::size_t cutoff) { return 2 * cutoff + 1; }

TwoModeUnitary TwoModeUnitary::squeezer(std::size_t cutoff, const SqueezerParams& p) {
    std::size_t d = padded_levels(cutoff);
    auto dim = static_cast<Eigen::Index>(d * d);
    double r = std::asinh(std::sqrt(p.gain));
    cplx zeta = std::polar(r, p.phase);
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t np = 0; np + 1 < d; ++np) {
        for (std::size_t nq = 0; nq + 1 < d; ++nq) {
            auto from = static_cast<Eigen::Index>(pair_index(np, nq, d));
            auto to = static_cast<Eigen::Index>(pair_index(np + 1, nq + 1, d));
            double m = std::sqrt(static_cast<double>((np + 1) * (nq + 1)));
            k(to, from) += zeta * m;             // zeta a^dag b^dag
            k(from, to) -= std::conj(zeta) * m;  // -zeta* a b
        }
    }
    return TwoModeUnitary(Kind::Squeezer, cutoff, k, r);
}

TwoModeUnitary TwoModeUnitary::beam_splitter(std::size_t cutoff, double t, double r) {
    if (std::abs(t * t + r * r - 1.0) > 1e-12) {
        throw std::invalid_argument("beam splitter amplitudes must satisfy t^2 + r^2 = 1");
    }
    std::size_t d = padded_levels(cutoff);
    auto dim = static_cast<Eigen::Index>(d * d);
    double gamma = std::atan2(r, t);
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
    // gamma (a^dag b - a b^dag)
    for (std::size_t np = 0; np + 1 < d; ++np) {
        for (std::size_t nq = 1; nq < d; ++nq) {
            auto from = static_cast<Eigen::Index>(pair_index(np, nq, d));
            auto to = static_cast<Eigen::Index>(pair_index(np + 1, nq - 1, d));
            double m = std::sqrt(static_cast<double>((np + 1) * nq));
            k(to, from) += gamma * m;
            k(from, to) -= gamma * m;
        }
    }
    return TwoModeUnitary(Kind::BeamSplitter, cutoff, k, gamma);
}

double TwoModeUnitary::apply(FockState& state, std::size_t p, std::size_t q) const {
    if (state.levels() != levels_) {
        throw std::invalid_argument("unitary built for a different cutoff");
    }
    if (p == q || p >= state.n_modes() || q >= state.n_modes()) {
        throw std::invalid_argument("two-mode element needs two distinct valid modes");
    }
    const std::size_t d = levels_;
    const std::size_t dim = d * d;
    std::vector<std::size_t> offsets(dim);
    for (std::size_t nq = 0; nq < d; ++nq) {
        for (std::size_t np = 0; np < d; ++np) {
            offsets[pair_index(np, nq, d)] = np * state.stride(p) + nq * state.stride(q);
        }
    }
    auto& amps = state.amplitudes();
    std::vector<cplx> in(dim);
    std::vector<cplx> out(dim);
    double lost = 0.0;
    for (std::size_t base : outer_bases(state, p, q)) {
        double before = 0.0;
        for (std::size_t l = 0; l < dim; ++l) {
            in[l] = amps[base + offsets[l]];
            before += std::norm(in[l]);
        }
        if (before == 0.0) {
            continue;
        }
        std::fill(out.begin(), out.end(), cplx{});
        for (std::size_t l = 0; l < dim; ++l) {
            if (in[l] == 0.0) {
                continue;
            }
            const double xr = in[l].real();
            const double xi = in[l].imag();
            for (const auto& [k, u] : columns_[l]) {
                out[k] += cplx(u.real() * xr - u.imag() * xi, u.real() * xi + u.imag() * xr);
            }
        }
        double after = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            amps[base + offsets[k]] = out[k];
            after += std::norm(out[k]);
        }
        lost += before - after;
    }
    return std::max(lost, 0.0);
}

void apply_phase(FockState& state, std::size_t mode, double phi) {
    std::vector<cplx> factors(state.levels());
    for (std::size_t n = 0; n < factors.size(); ++n) {
        factors[n] = std::polar(1.0, phi * static_cast<double>(n));
    }
    auto& amps = state.amplitudes();
    for (std::size_t flat = 0; flat < amps.size(); ++flat) {
        amps[flat] *= factors[state.occupation(flat, mode)];
    }
}

MomentEvaluator::MomentEvaluator(const FockState& state)
    : state_(state), lowered_(state.n_modes()), have_(state.n_modes(), false), counts_(state.n_modes()) {}

const std::vector<cplx>& MomentEvaluator::lowered(std::size_t j) {
    if (!have_.at(j)) {
        lowered_[j] = state_.annihilate(j);
        have_[j] = true;
    }
    return lowered_[j];
}

const std::vector<double>& MomentEvaluator::counts(std::size_t i) {
    if (counts_.at(i).empty()) {
        counts_[i].resize(state_.dimension());
        for_each_level(state_, i, [&](std::size_t flat, std::size_t n) { counts_[i][flat] = static_cast<double>(n); });
    }
    return counts_[i];
}

cplx MomentEvaluator::mean(std::size_t i) {
    const auto& psi = state_.amplitudes();
    const auto& ai = lowered(i);
    cplx sum{};
    for (std::size_t k = 0; k < psi.size(); ++k) {
        sum += std::conj(psi[k]) * ai[k];
    }
    return sum;
}

double MomentEvaluator::number(std::size_t i) {
    const auto& psi = state_.amplitudes();
    const auto& ni = counts(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        sum += std::norm(psi[k]) * ni[k];
    }
    return sum;
}

cplx MomentEvaluator::normal(std::size_t i, std::size_t j) {
    const auto& ai = lowered(i);
    const auto& aj = lowered(j);
    cplx sum{};
    for (std::size_t k = 0; k < ai.size(); ++k) {
        sum += std::conj(ai[k]) * aj[k];
    }
    return sum;
}

// <psi| a_i a_j |psi> = sum_k conj(psi_k) sqrt(n_i(k) + 1) (a_j psi)_{k + stride_i}.
cplx MomentEvaluator::anomalous(std::size_t i, std::size_t j) {
    const auto& psi = state_.amplitudes();
    const auto& aj = lowered(j);
    const std::size_t stride = state_.stride(i);
    const std::size_t levels = state_.levels();
    std::vector<double> root(levels + 1);
    for (std::size_t n = 0; n <= levels; ++n) {
        root[n] = std::sqrt(static_cast<double>(n));
    }
    cplx sum{};
    for_each_level(state_, i, [&](std::size_t flat, std::size_t n) {
        if (n + 1 < levels) {
            sum += std::conj(psi[flat]) * (root[n + 1] * aj[flat + stride]);
        }
    });
    return sum;
}

double MomentEvaluator::number_product(std::size_t i, std::size_t j) {
    const auto& psi = state_.amplitudes();
    const auto& ni = counts(i);
    const auto& nj = counts(j);
    double sum = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        sum += std::norm(psi[k]) * ni[k] * nj[k];
    }
    return sum;
}

std::vector<cplx> coherent_amplitudes(cplx alpha, std::size_t cutoff) {
    std::vector<cplx> c(cutoff + 1);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 1; n <= cutoff; ++n) {
        c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    }
    return c;
}

std::vector<cplx> thermal_sample(const Network& net, std::uint64_t seed, std::size_t sample) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(sample))));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> alphas;
    for (double n_bar : net.thermal_inputs) {
        if (n_bar > 0.0) {
            double sigma = std::sqrt(0.5 * n_bar);
            double re = gauss(rng);
            double im = gauss(rng);
            alphas.emplace_back(sigma * re, sigma * im);
        }
    }
    return alphas;
}

double evolve(FockState& state, const Network& net) {
    if (state.n_modes() != net.n_modes) {
        throw std::invalid_argument("state and network disagree on the number of modes");
    }
    PreparedNetwork prepared = prepare(net, state.cutoff());
    return run_prepared(state, prepared);
}

SimulationSummary simulate_network(const FockConfig& cfg, const Network& net, const SampleVisitor& visit) {
    check_network(cfg, net);
    PreparedNetwork prepared = prepare(net, cfg.cutoff);
    SimulationSummary summary;
    summary.stochastic = net.has_thermal_input();
    summary.samples = summary.stochastic ? cfg.mc_samples : 1;
    std::vector<double> leakage(summary.samples, 0.0);
    parallel_samples(summary.samples, [&](std::size_t s) {
        FockState state(net.n_modes, cfg.cutoff);
        std::vector<cplx> alphas = summary.stochastic ? thermal_sample(net, cfg.seed, s) : std::vector<cplx>{};
        leakage[s] = input_state(net, cfg.cutoff, alphas, state);
        leakage[s] += run_prepared(state, prepared);
        visit(s, state);
    });
    summary.mean_leakage = std::accumulate(leakage.begin(), leakage.end(), 0.0) / static_cast<double>(summary.samples);
    if (summary.mean_leakage > cfg.max_leakage) {
        throw TruncationError("truncation leakage " + std::to_string(summary.mean_leakage) + " exceeds " +
                              std::to_string(cfg.max_leakage) + "; raise the cutoff");
    }
    return summary;
}

std::vector<FockState> simulate_states(const FockConfig& cfg, const Network& net) {
    std::vector<FockState> states(net.has_thermal_input() ? cfg.mc_samples : 1, FockState(net.n_modes, cfg.cutoff));
    simulate_network(cfg, net, [&](std::size_t s, const FockState& state) { states[s] = state; });
    return states;
}

SampleTable::SampleTable(std::size_t columns, std::size_t samples, bool stochastic)
    : columns_(columns), samples_(samples), stochastic_(stochastic), data_(columns * samples, 0.0) {}

std::vector<double> SampleTable::means() const {
    std::vector<double> m(columns_, 0.0);
    for (std::size_t s = 0; s < samples_; ++s) {
        for (std::size_t c = 0; c < columns_; ++c) {
            m[c] += at(s, c);
        }
    }
    for (auto& v : m) {
        v /= static_cast<double>(samples_);
    }
    return m;
}

OracleEstimate SampleTable::mean(std::size_t column) const {
    return derived([column](std::span<const double> m) { return m[column]; });
}

OracleEstimate SampleTable::derived(const std::function<double(std::span<const double>)>& f) const {
    std::vector<double> m = means();
    double value = f(m);
    if (!stochastic_ || samples_ < 2) {
        return OracleEstimate{value, 0.0};
    }
    // Gradient by central differences; f is smooth in the means.
    std::vector<double> grad(columns_, 0.0);
    std::vector<double> probe = m;
    for (std::size_t c = 0; c < columns_; ++c) {
        double h = 1e-6 * std::max(std::abs(m[c]), 1e-6);
        probe[c] = m[c] + h;
        double up = f(probe);
        probe[c] = m[c] - h;
        double down = f(probe);
        probe[c] = m[c];
        grad[c] = (up - down) / (2.0 * h);
    }
    // Variance of the linearised per-sample statistic.
    double z_mean = 0.0;
    std::vector<double> z(samples_, 0.0);
    for (std::size_t s = 0; s < samples_; ++s) {
        for (std::size_t c = 0; c < columns_; ++c) {
            z[s] += grad[c] * at(s, c);
        }
        z_mean += z[s];
    }
    z_mean /= static_cast<double>(samples_);
    double ss = 0.0;
    for (double v : z) {
        ss += (v - z_mean) * (v - z_mean);
    }
    double var = ss / static_cast<double>(samples_ - 1);
    return OracleEstimate{value, std::sqrt(var / static_cast<double>(samples_))};
}

SampleTable sample_table(const FockConfig& cfg, const Network& net, std::size_t columns, const RowFunction& row) {
    bool stochastic = net.has_thermal_input();
    SampleTable table(columns, stochastic ? cfg.mc_samples : 1, stochastic);
    simulate_network(cfg, net, [&](std::size_t s, const FockState& state) {
        MomentEvaluator eval(state);
        std::vector<double> values(columns, 0.0);
        row(eval, values);
        for (std::size_t c = 0; c < columns; ++c) {
            table.at(s, c) = values[c];
        }
    });
    return table;
}

std::vector<ComplexEstimate> oracle_moments(const FockConfig& cfg, const Network& net,
                                            std::span<const MomentQuery> queries) {
    for (const auto& q : queries) {
        if (q.i.index >= net.n_modes || q.j.index >= net.n_modes) {
            throw std::out_of_range("moment query addresses a mode outside the network");
        }
    }
    std::vector<MomentQuery> qs(queries.begin(), queries.end());
    SampleTable table = sample_table(cfg, net, 2 * qs.size(), [&](MomentEvaluator& eval, std::span<double> row) {
        for (std::size_t k = 0; k < qs.size(); ++k) {
            cplx v{};
            switch (qs[k].kind) {
                case OracleMoment::Mean:
                    v = eval.mean(qs[k].i.index);
                    break;
                case OracleMoment::Number:
                    v = eval.number(qs[k].i.index);
                    break;
                case OracleMoment::Normal:
                    v = eval.normal(qs[k].i.index, qs[k].j.index);
                    break;
                case OracleMoment::Anomalous:
                    v = eval.anomalous(qs[k].i.index, qs[k].j.index);
                    break;
                case OracleMoment::NumberProduct:
                    v = eval.number_product(qs[k].i.index, qs[k].j.index);
                    break;
            }
            row[2 * k] = v.real();
            row[2 * k + 1] = v.imag();
        }
    });
    std::vector<ComplexEstimate> out;
    out.reserve(qs.size());
    for (std::size_t k = 0; k < qs.size(); ++k) {
        out.push_back(ComplexEstimate{table.mean(2 * k), table.mean(2 * k + 1)});
    }
    return out;
}

ComplexEstimate oracle_moment(const FockConfig& cfg, const Network& net, const MomentQuery& query) {
    return oracle_moments(cfg, net, std::span<const MomentQuery>(&query, 1)).front();
}

OracleEstimate oracle_conditional(const FockConfig& cfg, const Network& net, ModeId mode_i, ModeId mode_s) {
    SampleTable table = sample_table(cfg, net, 2, [&](MomentEvaluator& eval, std::span<double> row) {
        row[0] = eval.number_product(mode_i.index, mode_s.index);
        row[1] = eval.number(mode_i.index);
    });
    std::vector<double> m = table.means();
    if (!(m[1] > 0.0)) {
        throw NoHeraldEvents("no herald events: idler mean photon number is zero");
    }
    return table.derived([](std::span<const double> v) { return v[0] / v[1]; });
}

OracleEstimate oracle_wick_residual(const FockConfig& cfg, const Network& net, ModeId mode_i, ModeId mode_s) {
    SampleTable table = sample_table(cfg, net, 7, [&](MomentEvaluator& eval, std::span<double> row) {
        std::size_t i = mode_i.index;
        std::size_t s = mode_s.index;
        cplx pair = eval.anomalous(i, s);
        cplx beat = eval.normal(i, s);
        row[0] = eval.number_product(i, s);
        row[1] = eval.number(i);
        row[2] = eval.number(s);
        row[3] = pair.real();
        row[4] = pair.imag();
        row[5] = beat.real();
        row[6] = beat.imag();
    });
    return table.derived([](std::span<const double> v) {
        return v[0] - (v[1] * v[2] + v[3] * v[3] + v[4] * v[4] + v[5] * v[5] + v[6] * v[6]);
    });
}

}  // namespace icl::fock

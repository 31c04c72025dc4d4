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

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "icl/heralding.hpp"
#include "icl/metrics.hpp"

namespace icl {
namespace {

constexpr double kPi = std::numbers::pi;

Topology two(double va, double vb, double t, double nb) { return Topology::two_spdc({va}, {vb}, {t, nb}); }

TEST(Visibility, ReferenceValues) {
    EXPECT_NEAR(visibility(two(0.1, 0.1, 0.5, 10.0)), 0.210389, 1e-6);
    Topology three = Topology::three_spdc({10.0}, {10.0}, {10.0}, {0.5, 0.0});
    EXPECT_NEAR(visibility(three), 2.0 * std::sqrt(6050.0) / 180.0, 1e-12);
    EXPECT_NEAR(visibility(three), 0.864241, 1e-6);
    EXPECT_EQ(visibility(two(0.1, 0.1, 0.0, 10.0)), 0.0);
    EXPECT_EQ(visibility(two(0.0, 0.0, 0.0, 0.0)), 0.0);
}

TEST(Visibility, EngineMatchesClosedFormForEveryTopology) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        SqueezerParams a(100.0 * unit(rng));
        SqueezerParams b(100.0 * unit(rng));
        ObjectPort obj(unit(rng), 100.0 * unit(rng));
        for (const Topology& topo : {Topology::two_spdc(a, b, obj),
                                     Topology::two_spdc_attenuated(a, b, unit(rng), obj),
                                     Topology::three_spdc(a, b, SqueezerParams(100.0 * unit(rng)), obj)}) {
            EXPECT_NEAR(visibility(topo), visibility_closed_form(topo), 1e-10) << to_string(topo.kind());
        }
    }
}

TEST(OptimalAttenuation, EqualsCoherenceBound) {
    EXPECT_NEAR(optimal_attenuated_visibility(0.5, 0.1, 10.0), 0.301511, 1e-6);
    for (double nb : {0.0, 1.0, 37.0}) {
        EXPECT_NEAR(optimal_attenuated_visibility(1.0, 0.4, nb), 1.0, 1e-15);
    }
    for (double t = 0.0; t <= 1.0; t += 0.1) {
        for (double nb : {0.0, 10.0, 100.0}) {
            Topology topo = two(0.1, 0.1, t, nb);
            EXPECT_NEAR(optimal_attenuated_visibility(t, 0.1, nb), g1_coherence(topo), 1e-12);
        }
    }
}

TEST(OptimalAttenuation, RejectsBadInput) {
    EXPECT_THROW(optimal_attenuated_visibility(1.5, 0.1, 1.0), std::invalid_argument);
    EXPECT_THROW(optimal_attenuated_visibility(0.5, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(optimal_attenuated_visibility(0.5, 0.1, -1.0), std::invalid_argument);
}

TEST(OptimalAttenuation, NumericalSearchReproducesClosedForm) {
    for (double t : {0.05, 0.2, 0.5, 0.8}) {
        for (double nb : {0.0, 10.0, 100.0}) {
            Topology topo = Topology::two_spdc_attenuated({0.1}, {0.1}, 1.0, {t, nb});
            AttenuationOptimum best = maximize_visibility_over_attenuation(topo);
            EXPECT_NEAR(best.visibility, optimal_attenuated_visibility(t, 0.1, nb), 1e-6) << t << " " << nb;
            EXPECT_GE(best.attenuation, 0.0);
            EXPECT_LE(best.attenuation, 1.0);
        }
    }
    EXPECT_THROW(maximize_visibility_over_attenuation(two(0.1, 0.1, 0.5, 1.0)), std::invalid_argument);
}

TEST(DifferenceVariance, SumOfMeans) {
    EXPECT_EQ(difference_variance(two(0.0, 0.0, 0.5, 0.0), 0.3), 0.0);
    EXPECT_NEAR(difference_variance(two(0.1, 0.1, 0.5, 10.0), 0.0), 0.705, 1e-12);
    for (double phi : {0.1, 0.9, 2.5}) {
        EXPECT_NEAR(difference_variance(two(0.1, 0.1, 0.5, 10.0), phi), 0.705, 1e-12);
    }
}

TEST(Snr, UnconditionalReference) {
    EXPECT_NEAR(snr_unconditional(two(0.1, 0.1, 1.0, 0.0), 0.0).value, 0.044 / 0.21, 1e-12);
    EXPECT_NEAR(snr_unconditional(two(0.1, 0.1, 1.0, 0.0), kPi / 4.0).value, 0.0, 1e-15);
}

TEST(Snr, UnconditionalMatchesSinglesDifference) {
    for (double phi : {0.0, 0.3, 1.0}) {
        Topology topo = two(0.3, 2.0, 0.4, 5.0);
        SinglesPair s = singles_fringe_analytic(topo, phi);
        double d = s.n_plus - s.n_minus;
        EXPECT_NEAR(snr_unconditional(topo, phi).value, d * d / difference_variance(topo, phi), 1e-12);
    }
}

TEST(Snr, UnconditionalDecreasesWithThermalPhotons) {
    double prev = snr_unconditional(two(0.1, 0.1, 0.5, 0.0), 0.0).value;
    for (double nb : {0.5, 1.0, 10.0, 100.0}) {
        double cur = snr_unconditional(two(0.1, 0.1, 0.5, nb), 0.0).value;
        EXPECT_LT(cur, prev);
        prev = cur;
    }
}

TEST(Snr, PairLimitReferenceAndIndependence) {
    for (double nb : {0.0, 10.0, 100.0}) {
        EXPECT_NEAR(snr_heralded(two(0.1, 0.1, 0.5, nb), 0.0, HeraldLimit::Pair).value, 0.022 / 0.205, 1e-12);
    }
    EXPECT_NEAR(snr_heralded(two(0.1, 0.1, 0.5, 0.0), 0.0, HeraldLimit::Pair).value,
                snr_unconditional(two(0.1, 0.1, 0.5, 0.0), 0.0).value, 1e-15);
}

TEST(Snr, HeraldedBeatsUnconditionalWithBackground) {
    for (int k = 0; k < 10; ++k) {
        for (double nb : {0.1, 10.0, 100.0}) {
            Topology topo = two(0.1, 0.1, 0.1 * k, nb);
            EXPECT_GE(snr_heralded(topo, 0.0, HeraldLimit::Pair).value, snr_unconditional(topo, 0.0).value);
        }
    }
}

TEST(Snr, ConvergeAtUnitTransmission) {
    for (double nb : {0.0, 10.0, 100.0}) {
        Topology topo = two(0.1, 0.1, 1.0, nb);
        EXPECT_EQ(snr_unconditional(topo, 0.0).value, snr_heralded(topo, 0.0, HeraldLimit::Pair).value);
    }
}

TEST(Snr, AmplitudeConventionIsSquareRoot) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        Topology topo = two(10.0 * unit(rng), 10.0 * unit(rng), unit(rng), 10.0 * unit(rng));
        double phi = kPi * unit(rng);
        for (HeraldLimit limit : {HeraldLimit::General, HeraldLimit::Pair}) {
            double power = snr_heralded(topo, phi, limit).value;
            double amp = snr_heralded(topo, phi, limit, SnrConvention::AmplitudeRatio).value;
            EXPECT_NEAR(amp, std::sqrt(power), 1e-14);
        }
        double power = snr_unconditional(topo, phi).value;
        SnrResult amp = snr_unconditional(topo, phi, SnrConvention::AmplitudeRatio);
        EXPECT_EQ(amp.convention, SnrConvention::AmplitudeRatio);
        EXPECT_NEAR(amp.value, std::sqrt(power), 1e-14);
        EXPECT_NEAR(amp.as(SnrConvention::PowerRatio).value, power, 1e-12);
    }
}

TEST(Snr, GeneralHeraldedMatchesConditionalFringe) {
    for (double t : {0.1, 0.5, 0.9}) {
        Topology topo = two(0.1, 0.1, t, 10.0);
        HeraldedFringe f = heralded_fringe_mode_matched(topo);
        double expected = 2.0 * f.amplitude * f.amplitude / f.dc;
        EXPECT_NEAR(snr_heralded(topo, 0.0, HeraldLimit::General).value, expected, 1e-10);
    }
}

TEST(Snr, LinearInTransmittanceAtSmallT) {
    for (double nb : {0.0, 1.0, 10.0, 100.0}) {
        double u3 = snr_unconditional(two(0.1, 0.1, 1e-3, nb), 0.0).value / 1e-3;
        double u4 = snr_unconditional(two(0.1, 0.1, 1e-4, nb), 0.0).value / 1e-4;
        EXPECT_NEAR(u3 / u4, 1.0, 0.01);
        double h3 = snr_heralded(two(0.1, 0.1, 1e-3, nb), 0.0, HeraldLimit::Pair).value / 1e-3;
        double h4 = snr_heralded(two(0.1, 0.1, 1e-4, nb), 0.0, HeraldLimit::Pair).value / 1e-4;
        EXPECT_NEAR(h3 / h4, 1.0, 0.01);
    }
}

TEST(Snr, RejectsOtherTopologies) {
    Topology three = Topology::three_spdc({0.1}, {0.1}, {0.1}, {0.5, 0.0});
    EXPECT_THROW(snr_unconditional(three, 0.0), std::invalid_argument);
    EXPECT_THROW(snr_heralded(three, 0.0, HeraldLimit::Pair), std::invalid_argument);
}

}  // namespace
}  // namespace icl

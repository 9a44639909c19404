// Copyright 2026 The vibronic-qpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "test_support.hpp"
#include "vibronic/error.hpp"
#include "vibronic/oracle.hpp"
#include "vibronic/thermal.hpp"

using namespace vibronic;

TEST_CASE("pair amplitudes follow Boltzmann weights") {
    const auto thermal = ThermalConfig::from_temperature(300.0);
    const double ratio = std::exp(-thermal.beta() * 500.0);
    CHECK(ratio == doctest::Approx(0.0909).epsilon(2e-3));
    const auto k = thermal_pair_amplitudes(500.0, thermal, 20);
    CHECK(std::norm(k(0, 0)) == doctest::Approx(0.9091).epsilon(1e-3));
    for (Eigen::Index n = 0; n < 8; ++n)
        CHECK(std::abs(std::norm(k(n, n)) - oracle::boltzmann(500.0, thermal.beta(), static_cast<std::size_t>(n))) < 1e-8);
    for (Eigen::Index n = 1; n < 6; ++n)
        CHECK(std::norm(k(n, n)) / std::norm(k(n - 1, n - 1)) == doctest::Approx(ratio).epsilon(1e-6));
    double off = 0.0, sum = 0.0;
    for (Eigen::Index n = 0; n < k.rows(); ++n)
        for (Eigen::Index m = 0; m < k.cols(); ++m) {
            sum += std::norm(k(n, m));
            if (n != m)
                off = std::max(off, std::abs(k(n, m)));
        }
    CHECK(off < 1e-12);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero temperature gives the vacuum pair") {
    const auto k = thermal_pair_amplitudes(500.0, ThermalConfig::zero_temperature(), 4);
    CHECK(std::abs(k(0, 0) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(k.cwiseAbs().sum() == doctest::Approx(1.0));
    CHECK(thermal_angle(500.0, ThermalConfig::zero_temperature()) == 0.0);
    const double theta = thermal_angle(500.0, ThermalConfig::from_beta(0.01));
    CHECK(std::tanh(theta / 2) == doctest::Approx(std::exp(-2.5)));
    CHECK_THROWS(ThermalConfig::from_beta(-1.0));
}

TEST_CASE("prepared state has product Boltzmann marginals") {
    const auto problem = test::load("so2.json");
    const ModeCutoffs cut{{3, 3}};
    const auto beta = ThermalConfig::from_beta(1.0 / 400.0);
    for (auto enc : {Encoding::Binary, Encoding::Unary}) {
        const QubitLayout layout(enc, cut);
        const auto state = prepare_thermal(problem, beta, layout);
        CHECK(state.norm() == doctest::Approx(1.0));
        const FockSpace space(cut);
        const auto codes = layout.codewords();
        const std::size_t ns = layout.num_qubits();
        std::vector<RealVector> local;
        for (std::size_t k = 0; k < 2; ++k) {
            const auto amps = thermal_pair_amplitudes(problem.omega_a[static_cast<Eigen::Index>(k)], beta, 3);
            RealVector w(4);
            for (Eigen::Index n = 0; n < 4; ++n)
                w[n] = std::norm(amps(n, n));
            local.push_back(w);
        }
        for (std::size_t ni = 0; ni < space.dimension(); ++ni) {
            const double expect = local[0][static_cast<Eigen::Index>(space.level(ni, 0))] *
                                  local[1][static_cast<Eigen::Index>(space.level(ni, 1))];
            CHECK(std::norm(state[codes[ni] | (codes[ni] << ns)]) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(prepare_thermal(problem, beta, QubitLayout(Encoding::Binary, ModeCutoffs{{3}})), DimensionError);
}

TEST_CASE("cold thermal run matches zero temperature") {
    const auto problem = test::load("toy_single_mode.json");
    const ModeCutoffs cut{{7}};
    QpeOptions o;
    o.t = 8;
    o.shots = 20000;
    o.seed = 4;
    const auto cold = run_qpe_thermal(problem, cut, Encoding::Binary, o, ThermalConfig::from_beta(10.0));
    const auto zero = run_qpe(problem, cut, Encoding::Binary, o);
    CHECK(cold.discarded == 0);
    for (const auto &r : cold.records)
        CHECK(r.initial_levels == std::vector<std::size_t>{0});
    const double ea0 = initial_state_energy(problem, {0});
    const double width = 20.0;
    auto shifted = zero.as_sticks();
    for (auto &s : shifted.sticks)
        s.energy -= ea0;
    CHECK(total_variation(cold.histogram(width, 10.0), bin(shifted, width, 10.0)) <= 0.02);
}

TEST_CASE("warm thermal run shows hot bands and matches the oracle") {
    const auto problem = test::load("toy_single_mode.json");
    const ModeCutoffs cut{{7}};
    const auto thermal = ThermalConfig::from_beta(1.0 / (0.7 * problem.omega_a[0]));
    QpeOptions o;
    o.t = 10;
    o.shots = 20000;
    o.seed = 12;
    const auto s = run_qpe_thermal(problem, cut, Encoding::Binary, o, thermal);
    double hot = 0.0;
    for (std::size_t i = 0; i < s.records.size(); ++i)
        if (s.records[i].initial_levels[0] > 0)
            hot += 1.0;
    CHECK(hot / static_cast<double>(s.records.size()) > 0.1);
    bool negative = false;
    for (const auto &st : s.as_sticks().sticks)
        negative = negative || st.energy < -0.5 * problem.omega_a[0];
    CHECK(negative);
    const auto ref = thermal_fcp_oracle(problem, cut, thermal);
    const double width = 50.0;
    CHECK(total_variation(s.histogram(width, 25.0), bin(ref, width, 25.0)) <= 0.05);
}

TEST_CASE("unary thermal runs discard nothing in the exact backend") {
    const auto problem = test::load("toy_single_mode.json");
    QpeOptions o;
    o.t = 5;
    o.shots = 500;
    const auto s = run_qpe_thermal(problem, ModeCutoffs{{3}}, Encoding::Unary, o, ThermalConfig::from_beta(0.003));
    CHECK(s.discarded == 0);
    CHECK(s.records.size() == 500);
    o.t = 20;
    CHECK_THROWS_AS(run_qpe_thermal(problem, ModeCutoffs{{3}}, Encoding::Unary, o, ThermalConfig::from_beta(0.003)),
                    QubitBudgetError);
}

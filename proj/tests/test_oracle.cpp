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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "test_support.hpp"
#include "vibronic/error.hpp"
#include "vibronic/hamiltonian.hpp"
#include "vibronic/oracle.hpp"

using namespace vibronic;

namespace {

// Summed intensity of sticks within tol of the energy.
double intensity_near(const StickSpectrum &s, double energy, double tol) {
    double sum = 0.0;
    for (const auto &st : s.sticks)
        if (std::abs(st.energy - energy) < tol)
            sum += st.intensity;
    return sum;
}

} // namespace

TEST_CASE("identity transform gives one stick") {
    const auto s = exact_fcp(test::load("identity.json"), ModeCutoffs{{8}});
    std::size_t strong = 0;
    for (const auto &st : s.sticks) {
        if (st.intensity > 1e-20) {
            ++strong;
            CHECK(st.energy == doctest::Approx(500.0).epsilon(1e-14));
            CHECK(st.intensity == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    CHECK(strong == 1);
    CHECK(std::abs(s.leakage()) < 1e-14);
}

TEST_CASE("displaced oscillator follows the Poisson distribution") {
    const double delta = -1.8830;
    const auto s = exact_fcp(test::single_mode(1000, 1000, delta), ModeCutoffs{{40}});
    CHECK(intensity_near(s, 500.0, 1e-6) == doctest::Approx(0.1698).epsilon(1e-3));
    for (std::size_t n = 0; n < 15; ++n)
        CHECK(std::abs(intensity_near(s, 1000.0 * (static_cast<double>(n) + 0.5), 1e-6) -
                       oracle::poisson_fcf(delta, n)) < 1e-10);
}

TEST_CASE("SO2 Franck-Condon factors match grid quadrature") {
    const auto p = test::load("so2.json");
    const auto s = exact_fcp(p, ModeCutoffs{{30, 30}}, BuildRoute::Ladder);
    const auto overlaps = oracle::two_mode_overlaps(duschinsky_j(p), p.delta, 6);
    for (std::size_t n0 = 0; n0 <= 6; ++n0) {
        for (std::size_t n1 = 0; n1 <= 6; ++n1) {
            const double e = p.omega_b[0] * (static_cast<double>(n0) + 0.5) + p.omega_b[1] * (static_cast<double>(n1) + 0.5);
            const double fcf = std::pow(overlaps(static_cast<Eigen::Index>(n0), static_cast<Eigen::Index>(n1)), 2);
            CHECK(std::abs(intensity_near(s, e, 1e-4) - fcf) < 1e-8);
        }
    }
}

TEST_CASE("diagonalize_fcp equals the full eigendecomposition") {
    const auto r = build_hamiltonian(test::load("no2.json"), ModeCutoffs{{6, 9}});
    const auto a = diagonalize_fcp(r.hamiltonian);
    const auto b = fcp_from_eigensystem(hermitian_eigensystem(r.hamiltonian));
    REQUIRE(a.sticks.size() == b.sticks.size());
    for (std::size_t i = 0; i < a.sticks.size(); ++i) {
        CHECK(std::abs(a.sticks[i].energy - b.sticks[i].energy) < 1e-8);
        CHECK(std::abs(a.sticks[i].intensity - b.sticks[i].intensity) < 1e-12);
    }
    for (std::size_t i = 1; i < a.sticks.size(); ++i)
        CHECK(a.sticks[i - 1].energy <= a.sticks[i].energy);
}

TEST_CASE("leakage falls as cutoffs grow") {
    for (const char *name : {"so2.json", "h2o.json", "d2o.json", "no2.json"}) {
        const auto p = test::load(name);
        double previous = 1.0;
        for (std::size_t l = 2; l <= 16; l += 2) {
            const double leak = exact_fcp(p, ModeCutoffs{{l, l}}).leakage();
            CHECK(leak >= -1e-12);
            CHECK(leak <= previous + 1e-9);
            previous = leak;
        }
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    const FockSpace space(ModeCutoffs{{3}});
    const ManyBodyOperator a(space, embed(creation(3), 0, space).matrix(), true);
    CHECK_THROWS_AS(diagonalize_fcp(a), NumericalError);
}

TEST_CASE("Boltzmann populations") {
    const auto p = test::single_mode(500, 500, 1.0);
    const auto t = ThermalConfig::from_temperature(300.0);
    const FockSpace space(ModeCutoffs{{30}});
    const auto pop = boltzmann_populations(p, space, t);
    CHECK(pop[0] == doctest::Approx(0.9091).epsilon(1e-3));
    for (Eigen::Index n = 0; n < 10; ++n)
        CHECK(std::abs(pop[n] - oracle::boltzmann(500.0, t.beta(), static_cast<std::size_t>(n))) < 1e-12);
    CHECK(std::abs(pop.sum() - 1.0) < 1e-14);

    const auto so2 = test::load("so2.json");
    const FockSpace s2(ModeCutoffs{{4, 5}});
    const auto p2 = boltzmann_populations(so2, s2, t);
    const double z0 = (1 - std::exp(-t.beta() * 943.3 * 5)) / (1 - std::exp(-t.beta() * 943.3));
    const double z1 = (1 - std::exp(-t.beta() * 464.7 * 6)) / (1 - std::exp(-t.beta() * 464.7));
    const std::vector<std::size_t> levels{1, 2};
    CHECK(std::abs(p2[static_cast<Eigen::Index>(s2.flat_index(levels))] -
                   std::exp(-t.beta() * (943.3 + 2 * 464.7)) / (z0 * z1)) < 1e-14);
}

TEST_CASE("thermal oracle") {
    const auto p = test::load("toy_single_mode.json");
    SUBCASE("zero temperature is the shifted zero-T spectrum") {
        const auto cold = thermal_fcp_oracle(p, ModeCutoffs{{20}}, ThermalConfig::zero_temperature());
        const auto zero = exact_fcp(p, ModeCutoffs{{20}});
        REQUIRE(cold.sticks.size() == zero.sticks.size());
        for (std::size_t i = 0; i < zero.sticks.size(); ++i) {
            CHECK(std::abs(cold.sticks[i].energy - (zero.sticks[i].energy - 250.0)) < 1e-9);
            CHECK(std::abs(cold.sticks[i].intensity - zero.sticks[i].intensity) < 1e-14);
        }
    }
    SUBCASE("300 K has hot bands and unit total") {
        const auto hot = thermal_fcp_oracle(p, ModeCutoffs{{30}}, *p.thermal);
        CHECK(std::abs(hot.total_intensity() - 1.0) < 1e-6);
        double below = 0.0;
        for (const auto &s : hot.sticks)
            if (s.energy < -1.0)
                below += s.intensity;
        CHECK(below > 1e-3);
    }
    SUBCASE("invalid beta") { CHECK_THROWS_AS(ThermalConfig::from_beta(-2.0), InvalidArgument); }
}

TEST_CASE("level-resolved FCFs sum to the total") {
    const auto p = test::load("so2.json");
    const auto cut = ModeCutoffs{{16, 16}};
    const auto levels = level_resolved_fcf(p, cut, 0);
    double total = 0.0;
    for (double v : levels)
        total += v;
    CHECK(std::abs(total - exact_fcp(p, cut).total_intensity()) < 1e-10);
    CHECK(levels[0] > levels[8]);
}

TEST_CASE("convergence sweeps") {
    SUBCASE("identity problem converges at the first level") {
        const auto r = converge_sweep(test::load("identity.json"), 0, ModeCutoffs{{1}});
        CHECK(r.converged);
        CHECK(r.converged_level == 1);
        CHECK(r.trace.size() == 2);
        CHECK(std::isnan(r.trace[0].l1_previous));
        CHECK(r.warnings.empty());
    }
    SUBCASE("trace records successive distances") {
        SweepOptions o;
        o.threshold = 1e-3;
        o.max_level = 40;
        const auto r = converge_sweep(test::load("so2.json"), 0, ModeCutoffs{{0, 14}}, o);
        CHECK(r.converged);
        REQUIRE(r.trace.size() >= 2);
        CHECK(r.trace.back().l1_previous < 1e-3);
        CHECK(r.trace.back().level == r.converged_level + 1);
        SweepOptions jobs = o;
        jobs.jobs = 3;
        const auto rj = converge_sweep(test::load("so2.json"), 0, ModeCutoffs{{0, 14}}, jobs);
        CHECK(rj.converged_level == r.converged_level);
        CHECK(rj.trace.size() == r.trace.size());
    }
    SUBCASE("exhausted budget is reported") {
        SweepOptions o;
        o.threshold = 1e-12;
        o.max_level = 4;
        const auto r = converge_sweep(test::load("so2.json"), 0, ModeCutoffs{{0, 8}}, o);
        CHECK_FALSE(r.converged);
        CHECK_FALSE(r.warnings.empty());
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(converge_sweep(test::load("so2.json"), 2, ModeCutoffs{{3, 3}}), InvalidArgument);
        CHECK_THROWS_AS(converge_sweep(test::load("so2.json"), 0, ModeCutoffs{{3}}), DimensionError);
    }
}

TEST_CASE("ladder and QP spectra agree at converged cutoffs") {
    const auto p = test::load("so2.json");
    const auto a = broadened_fcp(exact_fcp(p, ModeCutoffs{{30, 30}}, BuildRoute::QP));
    const auto b = broadened_fcp(exact_fcp(p, ModeCutoffs{{30, 30}}, BuildRoute::Ladder));
    CHECK(l1_distance(a, b) <= 1e-4);
}

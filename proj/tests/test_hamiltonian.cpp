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
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "test_support.hpp"
#include "vibronic/error.hpp"
#include "vibronic/hamiltonian.hpp"
#include "vibronic/linalg.hpp"

using namespace vibronic;

namespace {

double max_abs(const ComplexMatrix &m) { return m.cwiseAbs().maxCoeff(); }

RealVector eigenvalues(const ManyBodyOperator &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.to_dense(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// Largest entry difference over rows and columns with every level <= max - margin.
double interior_difference(const ManyBodyOperator &a, const ManyBodyOperator &b, std::size_t margin) {
    const auto &space = a.space();
    std::vector<std::size_t> inner;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        bool ok = true;
        for (std::size_t k = 0; k < space.num_modes(); ++k)
            ok = ok && space.level(i, k) + margin <= space.max_level(k);
        if (ok)
            inner.push_back(i);
    }
    const ComplexMatrix da = a.to_dense(), db = b.to_dense();
    double worst = 0.0;
    for (auto i : inner)
        for (auto j : inner)
            worst = std::max(worst, std::abs(da(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                                             db(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    return worst;
}

VibronicProblem random_problem(std::size_t m, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> w(300.0, 1500.0), d(-1.5, 1.5);
    std::normal_distribution<double> g;
    RealMatrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < a.size(); ++i)
        a.data()[i] = g(rng);
    const RealMatrix s = Eigen::HouseholderQR<RealMatrix>(a).householderQ();
    VibronicProblem p;
    p.label = "random";
    p.omega_a.resize(static_cast<Eigen::Index>(m));
    p.omega_b.resize(static_cast<Eigen::Index>(m));
    p.delta.resize(static_cast<Eigen::Index>(m));
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(m); ++k) {
        p.omega_a[k] = w(rng);
        p.omega_b[k] = w(rng);
        p.delta[k] = d(rng);
    }
    p.duschinsky = s;
    return p;
}

} // namespace

TEST_CASE("q_B and p_B reduce to q_A and p_A for the identity transform") {
    auto p = test::load("identity.json");
    const FockSpace space(ModeCutoffs{{5}});
    const auto [qb, pb] = build_qb_pb(p, space);
    CHECK(max_abs(qb[0].to_dense() - embed(position(5), 0, space).to_dense()) < 1e-15);
    CHECK(max_abs(pb[0].to_dense() - embed(momentum(5), 0, space).to_dense()) < 1e-15);
}

TEST_CASE("displacement sits on the vacuum diagonal of q_B") {
    auto single = test::single_mode(800, 800, 2.0);
    const auto [qb, pb] = build_qb_pb(single, FockSpace(ModeCutoffs{{4}}));
    CHECK(std::abs(qb[0].element(0, 0) - 2.0) < 1e-15);

    const auto so2 = test::load("so2.json");
    const auto [q, p] = build_qb_pb(so2, FockSpace(ModeCutoffs{{10, 10}}));
    CHECK(std::abs(q[0].element(0, 0) + 1.8830) < 1e-14);
    CHECK(std::abs(q[1].element(0, 0) - 0.4551) < 1e-14);
}

TEST_CASE("QP route matches the Kronecker-product oracle") {
    std::mt19937_64 rng(3);
    for (const char *name : {"so2.json", "h2o.json", "d2o.json", "no2.json"}) {
        const auto p = test::load(name);
        const std::vector<std::size_t> lmax{4, 5};
        const auto h = build_harmonic_qp(p, FockSpace(ModeCutoffs{lmax})).hamiltonian;
        const auto ref = oracle::harmonic_hamiltonian(p.omega_a, p.omega_b, p.duschinsky, p.delta, lmax);
        CHECK(max_abs(h.to_dense() - ref) < 1e-9);
    }
    const auto p = random_problem(3, rng);
    const std::vector<std::size_t> lmax{2, 3, 2};
    const auto h = build_harmonic_qp(p, FockSpace(ModeCutoffs{lmax})).hamiltonian;
    CHECK(max_abs(h.to_dense() - oracle::harmonic_hamiltonian(p.omega_a, p.omega_b, p.duschinsky, p.delta, lmax)) <
          1e-9);
}

TEST_CASE("identity transform spectrum is omega (n + 1/2)") {
    const auto p = test::load("identity.json");
    for (auto route : {BuildRoute::QP, BuildRoute::Ladder}) {
        const auto r = build_hamiltonian(p, ModeCutoffs{{6}}, route);
        const auto e = eigenvalues(r.hamiltonian);
        // The top level carries the truncation artifact; the rest is omega (n + 1/2).
        for (int n = 0; n < 6; ++n) {
            const double target = 1000.0 * (n + 0.5);
            CHECK((e.array() - target).abs().minCoeff() < 1e-9);
        }
    }
    const auto ladder = build_hamiltonian(p, ModeCutoffs{{6}}, BuildRoute::Ladder).hamiltonian.to_dense();
    ComplexMatrix off = ladder;
    off.diagonal().setZero();
    CHECK(max_abs(off) == 0.0);
}

TEST_CASE("displacement leaves the spectrum unchanged") {
    const auto p = test::single_mode(1000, 1000, 1.0);
    const auto e = eigenvalues(build_hamiltonian(p, ModeCutoffs{{20}}).hamiltonian);
    CHECK(std::abs(e[0] - 500.0) < 1e-6);

    const auto shifted = test::single_mode(700, 700, 1.5);
    const std::size_t lmax = 40;
    const auto es = eigenvalues(build_hamiltonian(shifted, ModeCutoffs{{lmax}}).hamiltonian);
    for (Eigen::Index n = 0; n < 10; ++n)
        CHECK(std::abs(es[n] - 700.0 * (static_cast<double>(n) + 0.5)) < 1e-6);
}

TEST_CASE("SO2 ground state is the final-surface zero-point energy") {
    const auto e = eigenvalues(build_hamiltonian(test::load("so2.json"), ModeCutoffs{{13, 20}}).hamiltonian);
    CHECK(std::abs(e[0] - 848.45) < 0.01);
}

TEST_CASE("ladder and QP routes agree on the interior block") {
    std::mt19937_64 rng(17);
    std::vector<VibronicProblem> problems;
    for (const char *name : {"so2.json", "h2o.json", "d2o.json", "no2.json", "identity.json", "toy_single_mode.json"})
        problems.push_back(test::load(name));
    for (std::size_t m = 1; m <= 3; ++m)
        problems.push_back(random_problem(m, rng));
    for (const auto &p : problems) {
        const auto cut = ModeCutoffs::uniform(p.num_modes(), p.num_modes() == 3 ? 4 : 6);
        const auto qp = build_hamiltonian(p, cut, BuildRoute::QP).hamiltonian;
        const auto ladder = build_hamiltonian(p, cut, BuildRoute::Ladder).hamiltonian;
        CHECK(interior_difference(qp, ladder, 2) < 1e-9);
    }
}

TEST_CASE("harmonic builds are Hermitian and positive") {
    for (const char *name : {"so2.json", "h2o.json", "d2o.json", "no2.json"}) {
        const auto p = test::load(name);
        for (auto route : {BuildRoute::QP, BuildRoute::Ladder}) {
            const auto r = build_hamiltonian(p, ModeCutoffs{{6, 7}}, route);
            CHECK(r.hermiticity_deviation <= kHermiticityTolerance);
            CHECK(r.hamiltonian.hermitian());
            CHECK(r.positive_semidefinite);
            CHECK(eigenvalues(r.hamiltonian)[0] >= -1e-9);
            CHECK(r.term_count > 0);
        }
    }
}

TEST_CASE("ladder route on the identity transform is b^dag = a^dag") {
    const auto terms = harmonic_terms(test::load("identity.json"), BuildRoute::Ladder);
    REQUIRE(terms.size() == 2);
    bool number_term = false, constant = false;
    for (const auto &t : terms) {
        if (t.factors.empty()) {
            constant = std::abs(t.coefficient - 500.0) < 1e-12;
        } else {
            number_term = t.factors.size() == 2 && t.factors[0].kind == FactorKind::Creation &&
                          t.factors[1].kind == FactorKind::Annihilation && std::abs(t.coefficient - 1000.0) < 1e-12;
        }
    }
    CHECK(number_term);
    CHECK(constant);
}

TEST_CASE("term assembly equals the direct build") {
    const auto p = test::load("so2.json");
    const FockSpace space(ModeCutoffs{{5, 6}});
    for (auto route : {BuildRoute::QP, BuildRoute::Ladder}) {
        const auto assembled = assemble(harmonic_terms(p, route), space);
        const auto built = route == BuildRoute::QP ? build_harmonic_qp(p, space) : build_harmonic_ladder(p, space);
        CHECK(max_abs(assembled.to_dense() - built.hamiltonian.to_dense()) < 1e-9);
    }
}

TEST_CASE("route names") {
    CHECK(parse_route("qp") == BuildRoute::QP);
    CHECK(parse_route("ladder") == BuildRoute::Ladder);
    CHECK(to_string(BuildRoute::Ladder) == "ladder");
    CHECK_THROWS_AS(parse_route("doktorov"), InvalidArgument);
}

TEST_CASE("anharmonic terms") {
    SUBCASE("empty list leaves H0 unchanged") {
        const auto p = test::load("so2.json");
        const FockSpace space(ModeCutoffs{{4, 4}});
        const auto h0 = build_harmonic_qp(p, space).hamiltonian;
        const auto [qb, pb] = build_qb_pb(p, space);
        CHECK(max_abs(add_anharmonic(h0, p, qb).to_dense() - h0.to_dense()) == 0.0);
    }
    SUBCASE("zero coefficients give the harmonic operator") {
        auto p = test::load("so2_anharmonic.json");
        const auto cut = ModeCutoffs{{5, 4, 3}};
        const auto harmonic = [&] {
            auto q = p;
            q.anharmonic.clear();
            return build_hamiltonian(q, cut).hamiltonian;
        }();
        for (auto &t : p.anharmonic)
            t.coefficient = 0.0;
        CHECK(max_abs(build_hamiltonian(p, cut).hamiltonian.to_dense() - harmonic.to_dense()) == 0.0);
    }
    SUBCASE("cubic q1 term of SO2 is present") {
        const auto p = test::load("so2_anharmonic.json");
        const auto it = std::find_if(p.anharmonic.begin(), p.anharmonic.end(), [](const AnharmonicTerm &t) {
            return t.modes == std::vector<std::size_t>{0, 0, 0};
        });
        REQUIRE(it != p.anharmonic.end());
        CHECK(it->coefficient == 44.0);
        const auto cut = ModeCutoffs{{6, 4, 4}};
        auto only = p;
        only.anharmonic = {*it};
        auto harmonic = p;
        harmonic.anharmonic.clear();
        const FockSpace space(cut);
        const auto [qb, pb] = build_qb_pb(p, space);
        const ComplexMatrix q = qb[0].to_dense();
        const ComplexMatrix expected = 44.0 * 0.5 * (q * q * q + (q * q * q).adjoint());
        const ComplexMatrix diff =
            build_hamiltonian(only, cut).hamiltonian.to_dense() - build_hamiltonian(harmonic, cut).hamiltonian.to_dense();
        CHECK(max_abs(diff - expected) < 1e-9);
    }
    SUBCASE("quartic perturbation shifts the ground state by 3k/4") {
        auto p = test::single_mode(1000, 1000, 0.0);
        p.anharmonic = {{{0, 0, 0, 0}, 1.0}};
        const auto e = eigenvalues(build_hamiltonian(p, ModeCutoffs{{30}}).hamiltonian);
        CHECK(std::abs(e[0] - 500.0 - 0.75) < 5e-3);
    }
    SUBCASE("anharmonic SO2 is Hermitian and real") {
        const auto r = build_hamiltonian(test::load("so2_anharmonic.json"), ModeCutoffs{{6, 4, 4}});
        CHECK(r.hermiticity_deviation < kHermiticityTolerance);
        CHECK_FALSE(r.positive_semidefinite);
        const ComplexMatrix d = r.hamiltonian.to_dense();
        CHECK(d.imag().cwiseAbs().maxCoeff() < 1e-12);
        CHECK(anharmonic_terms(test::load("so2_anharmonic.json")).size() > 0);
    }
    SUBCASE("out-of-range mode is rejected") {
        auto p = test::load("so2.json");
        p.anharmonic = {{{0, 4}, 1.0}};
        const FockSpace space(ModeCutoffs{{3, 3}});
        auto q = test::load("so2.json");
        const auto [qb, pb] = build_qb_pb(q, space);
        CHECK_THROWS_AS(add_anharmonic(build_harmonic_qp(q, space).hamiltonian, p, qb), InvalidArgument);
    }
}

TEST_CASE("final-surface number operator on the identity transform") {
    const auto p = test::load("identity.json");
    const FockSpace space(ModeCutoffs{{6}});
    const ComplexMatrix n = final_number_operator(p, space, 0).to_dense();
    for (Eigen::Index l = 0; l < 6; ++l)
        CHECK(std::abs(n(l, l) - static_cast<double>(l)) < 1e-12);
}

TEST_CASE("build errors") {
    const auto p = test::load("so2.json");
    CHECK_THROWS_AS(build_hamiltonian(p, ModeCutoffs{{4}}), DimensionError);
    CHECK_THROWS_AS(build_hamiltonian(p, ModeCutoffs{{0, 4}}), InvalidArgument);
    auto bad = p;
    bad.duschinsky << 1, 1, 0, 1;
    CHECK_THROWS_AS(build_hamiltonian(bad, ModeCutoffs{{3, 3}}), ValidationError);
}

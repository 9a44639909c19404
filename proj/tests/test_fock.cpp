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
#include <random>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "vibronic/error.hpp"
#include "vibronic/fock.hpp"

using namespace vibronic;

namespace {

double max_abs(const ComplexMatrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ManyBodyOperator random_operator(const FockSpace &space, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(static_cast<Eigen::Index>(space.dimension()), static_cast<Eigen::Index>(space.dimension()));
    for (Eigen::Index i = 0; i < m.size(); ++i)
        m.data()[i] = Complex(g(rng), g(rng));
    return {space, m.sparseView(), false};
}

} // namespace

TEST_CASE("creation operator entries") {
    const auto c1 = creation(1);
    ComplexMatrix expected(2, 2);
    expected << 0, 0, 1, 0;
    CHECK(max_abs(c1.matrix - expected) == 0.0);

    const auto c2 = creation(2);
    CHECK(c2.matrix(1, 0) == Complex(1.0));
    CHECK(std::abs(c2.matrix(2, 1) - std::sqrt(2.0)) < 1e-15);
    CHECK((c2.matrix.cwiseAbs().array() > 0).count() == 2);
    for (std::size_t l = 1; l <= 8; ++l) {
        CHECK(max_abs(creation(l).matrix.transpose() - annihilation(l).matrix) == 0.0);
        CHECK(max_abs(creation(l).matrix - oracle::dense_creation(l).cast<Complex>()) < 1e-15);
    }
}

TEST_CASE("cutoff below one is rejected") {
    CHECK_THROWS_AS(creation(0), InvalidArgument);
    CHECK_THROWS_AS(position(0), InvalidArgument);
    CHECK_THROWS_AS(FockSpace(ModeCutoffs{{}}), InvalidArgument);
}

TEST_CASE("position and momentum entries") {
    const auto q1 = position(1);
    CHECK(std::abs(q1.matrix(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(q1.matrix(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(position(3).matrix(2, 1) - 1.0) < 1e-15);
    for (std::size_t l = 1; l <= 10; ++l) {
        const auto p = momentum(l).matrix;
        CHECK(max_abs(p - p.adjoint()) < 1e-15);
        CHECK(std::abs(p.trace()) < 1e-15);
        CHECK(max_abs(p - oracle::dense_momentum(l)) < 1e-15);
        CHECK(max_abs(position(l).matrix - oracle::dense_position(l)) < 1e-15);
    }
}

TEST_CASE("number operator and boundary commutator") {
    for (std::size_t l = 1; l <= 9; ++l) {
        const auto a = annihilation(l), c = creation(l);
        const ComplexMatrix n = (c * a).matrix;
        for (std::size_t k = 0; k <= l; ++k)
            CHECK(std::abs(n(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) - static_cast<double>(k)) < 1e-14);
        CHECK(max_abs(n - number(l).matrix) < 1e-14);

        const ComplexMatrix comm = (a * c).matrix - n;
        const auto top = static_cast<Eigen::Index>(l);
        for (Eigen::Index k = 0; k < top; ++k)
            CHECK(std::abs(comm(k, k) - 1.0) < 1e-14);
        CHECK(std::abs(comm(top, top) + static_cast<double>(l)) < 1e-14);
        ComplexMatrix off = comm;
        off.diagonal().setZero();
        CHECK(max_abs(off) == 0.0);
    }
}

TEST_CASE("q^2 + p^2 equals a a^dag + a^dag a") {
    for (std::size_t l = 1; l <= 10; ++l) {
        const auto q = position(l), p = momentum(l), a = annihilation(l), c = creation(l);
        CHECK(max_abs((q * q).matrix + (p * p).matrix - (a * c).matrix - (c * a).matrix) < 1e-12);
    }
    CHECK(std::abs((position(2) * position(2)).matrix(0, 0) - 0.5) < 1e-15);
}

TEST_CASE("flat index has mode 0 slowest") {
    const FockSpace space(ModeCutoffs{{2, 3, 1}});
    CHECK(space.dimension() == 3 * 4 * 2);
    CHECK(space.stride(2) == 1);
    CHECK(space.stride(1) == 2);
    CHECK(space.stride(0) == 8);
    const std::vector<std::size_t> levels{1, 2, 1};
    const auto flat = space.flat_index(levels);
    CHECK(flat == 1 * 8 + 2 * 2 + 1);
    CHECK(space.multi_index(flat) == levels);
    for (std::size_t i = 0; i < space.dimension(); ++i)
        CHECK(space.flat_index(space.multi_index(i)) == i);
    const std::vector<std::size_t> bad{3, 0, 0};
    CHECK_THROWS_AS(space.flat_index(bad), InvalidArgument);
}

TEST_CASE("embedding matches the Kronecker construction") {
    const std::vector<std::size_t> lmax{2, 3, 1};
    const FockSpace space(ModeCutoffs{lmax});
    for (std::size_t k = 0; k < lmax.size(); ++k) {
        CHECK(max_abs(embed(position(lmax[k]), k, space).to_dense() -
                      oracle::embed(oracle::dense_position(lmax[k]), k, lmax)) < 1e-15);
        CHECK(max_abs(embed(momentum(lmax[k]), k, space).to_dense() -
                      oracle::embed(oracle::dense_momentum(lmax[k]), k, lmax)) < 1e-15);
    }
    CHECK(max_abs(embed(identity(3), 1, space).to_dense() - ManyBodyOperator::identity(space).to_dense()) == 0.0);
    CHECK_THROWS_AS(embed(position(2), 1, space), DimensionError);
    CHECK_THROWS_AS(embed(position(2), 5, space), Error);
}

TEST_CASE("commutators of embedded q and p") {
    const FockSpace space(ModeCutoffs{{4, 5}});
    const auto q0 = embed(position(4), 0, space), p1 = embed(momentum(5), 1, space);
    CHECK(max_abs(commutator(q0, p1).to_dense()) == 0.0);

    for (std::size_t k = 0; k < 2; ++k) {
        const auto lk = space.max_level(k);
        const auto c = commutator(embed(position(lk), k, space), embed(momentum(lk), k, space)).to_dense();
        double interior = 0.0;
        bool boundary_fails = false;
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            for (std::size_t j = 0; j < space.dimension(); ++j) {
                const Complex expected = i == j ? Complex(0.0, 1.0) : Complex(0.0);
                const auto v = c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (space.level(i, k) < lk && space.level(j, k) < lk)
                    interior = std::max(interior, std::abs(v - expected));
                else if (i == j && std::abs(v - expected) > 1.0)
                    boundary_fails = true;
            }
        }
        CHECK(interior <= 1e-12);
        CHECK(boundary_fails);
    }
}

TEST_CASE("operator arithmetic") {
    std::mt19937_64 rng(11);
    const FockSpace space(ModeCutoffs{{1, 2, 1}});
    const auto a = random_operator(space, rng), b = random_operator(space, rng), c = random_operator(space, rng);
    CHECK(max_abs((a + (-1.0) * a).to_dense()) == 0.0);
    const ComplexMatrix left = ((a * b) * c).to_dense(), right = (a * (b * c)).to_dense();
    CHECK(max_abs(left - right) < 1e-12 * max_abs(left));
    CHECK(max_abs((a * b).to_dense() - a.to_dense() * b.to_dense()) < 1e-12 * max_abs(left));
    CHECK(max_abs((a - b).to_dense() - (a.to_dense() - b.to_dense())) == 0.0);
    CHECK(max_abs((a * Complex(0, 2)).to_dense() - Complex(0, 2) * a.to_dense()) == 0.0);

    const FockSpace other(ModeCutoffs{{2, 2}});
    CHECK_THROWS_AS(a + ManyBodyOperator::identity(other), DimensionError);
    CHECK_THROWS_AS(a * ManyBodyOperator::identity(other), DimensionError);
}

TEST_CASE("hermiticity flag and check") {
    std::mt19937_64 rng(5);
    const FockSpace space(ModeCutoffs{{2, 2}});
    const auto a = random_operator(space, rng);
    CHECK_FALSE(a.hermitian());
    const auto h = a.symmetrized();
    CHECK(h.hermitian());
    CHECK(h.hermiticity_deviation() < 1e-15);
    CHECK_NOTHROW(h.verify_hermitian());
    CHECK((h + h).hermitian());
    CHECK((h * 2.0).hermitian());
    CHECK_FALSE((h * Complex(0, 1)).hermitian());
    CHECK_FALSE((h + a).hermitian());
    CHECK(a.hermiticity_deviation() > 0.1);
    const ManyBodyOperator forged(space, a.matrix(), true);
    CHECK_THROWS_AS(forged.verify_hermitian(), NumericalError);
    CHECK(max_abs(a.adjoint().to_dense() - a.to_dense().adjoint()) == 0.0);
}

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

#include "vibronic/fock.hpp"

#include <cmath>

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

FockSpace::FockSpace(ModeCutoffs cutoffs) : cutoffs_(std::move(cutoffs)) {
    if (cutoffs_.size() == 0)
        throw InvalidArgument("a Fock space needs at least one mode");
    strides_.assign(cutoffs_.size(), 1);
    dimension_ = 1;
    for (std::size_t k = cutoffs_.size(); k-- > 0;) {
        strides_[k] = dimension_;
        dimension_ *= cutoffs_[k] + 1;
    }
}

std::size_t FockSpace::flat_index(std::span<const std::size_t> levels) const {
    if (levels.size() != num_modes())
        throw DimensionError(fmt::format("multi-index has {} entries, space has {} modes", levels.size(), num_modes()));
    std::size_t flat = 0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] > cutoffs_[k])
            throw InvalidArgument(fmt::format("level {} exceeds cutoff {} on mode {}", levels[k], cutoffs_[k], k));
        flat += levels[k] * strides_[k];
    }
    return flat;
}

std::vector<std::size_t> FockSpace::multi_index(std::size_t flat) const {
    if (flat >= dimension_)
        throw InvalidArgument(fmt::format("flat index {} outside dimension {}", flat, dimension_));
    std::vector<std::size_t> levels(num_modes());
    for (std::size_t k = 0; k < levels.size(); ++k)
        levels[k] = level(flat, k);
    return levels;
}

SingleModeOperator SingleModeOperator::operator*(const SingleModeOperator &rhs) const {
    if (dim() != rhs.dim())
        throw DimensionError("single-mode operators of different dimension");
    return {matrix * rhs.matrix};
}

namespace {

void require_cutoff(std::size_t max_level) {
    if (max_level < 1)
        throw InvalidArgument("level cutoff must be at least 1");
}

} // namespace

SingleModeOperator creation(std::size_t max_level) {
    require_cutoff(max_level);
    const auto n = static_cast<Eigen::Index>(max_level + 1);
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index l = 1; l < n; ++l)
        m(l, l - 1) = std::sqrt(static_cast<double>(l));
    return {m};
}

SingleModeOperator annihilation(std::size_t max_level) {
    return {creation(max_level).matrix.transpose()};
}

SingleModeOperator position(std::size_t max_level) {
    const auto ad = creation(max_level).matrix;
    return {(ad + ad.transpose()) / std::sqrt(2.0)};
}

SingleModeOperator momentum(std::size_t max_level) {
    const auto ad = creation(max_level).matrix;
    // (a - a^dagger) / (i sqrt 2)
    return {(ad.transpose() - ad) * Complex(0.0, -1.0 / std::sqrt(2.0))};
}

SingleModeOperator number(std::size_t max_level) {
    require_cutoff(max_level);
    const auto n = static_cast<Eigen::Index>(max_level + 1);
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index l = 0; l < n; ++l)
        m(l, l) = static_cast<double>(l);
    return {m};
}

SingleModeOperator identity(std::size_t max_level) {
    require_cutoff(max_level);
    const auto n = static_cast<Eigen::Index>(max_level + 1);
    return {ComplexMatrix::Identity(n, n)};
}

ManyBodyOperator::ManyBodyOperator(FockSpace space, SparseComplexMatrix matrix, bool hermitian)
    : space_(std::move(space)), matrix_(std::move(matrix)), hermitian_(hermitian) {
    const auto d = static_cast<Eigen::Index>(space_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d)
        throw DimensionError(fmt::format("matrix is {}x{}, space dimension is {}", matrix_.rows(), matrix_.cols(), d));
    matrix_.makeCompressed();
}

ManyBodyOperator ManyBodyOperator::identity(const FockSpace &space) {
    const auto d = static_cast<Eigen::Index>(space.dimension());
    SparseComplexMatrix m(d, d);
    m.setIdentity();
    return {space, std::move(m), true};
}

ManyBodyOperator ManyBodyOperator::zero(const FockSpace &space) {
    const auto d = static_cast<Eigen::Index>(space.dimension());
    return {space, SparseComplexMatrix(d, d), true};
}

Complex ManyBodyOperator::element(std::size_t row, std::size_t col) const {
    return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

ComplexMatrix ManyBodyOperator::to_dense() const { return ComplexMatrix(matrix_); }

double ManyBodyOperator::hermiticity_deviation() const {
    const SparseComplexMatrix diff = matrix_ - SparseComplexMatrix(matrix_.adjoint());
    double worst = 0.0;
    for (Eigen::Index c = 0; c < diff.outerSize(); ++c)
        for (SparseComplexMatrix::InnerIterator it(diff, c); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

void ManyBodyOperator::verify_hermitian(double tol) const {
    const double dev = hermiticity_deviation();
    if (dev > tol)
        throw NumericalError(fmt::format("operator is not Hermitian: max|A - A^dagger| = {:.3e}", dev));
}

ManyBodyOperator ManyBodyOperator::adjoint() const {
    return {space_, SparseComplexMatrix(matrix_.adjoint()), hermitian_};
}

ManyBodyOperator ManyBodyOperator::symmetrized() const {
    SparseComplexMatrix sym = 0.5 * (matrix_ + SparseComplexMatrix(matrix_.adjoint()));
    return {space_, std::move(sym), true};
}

void ManyBodyOperator::require_same_space(const ManyBodyOperator &rhs) const {
    if (!(space_ == rhs.space_))
        throw DimensionError("operators live on different Fock spaces");
}

ManyBodyOperator &ManyBodyOperator::operator+=(const ManyBodyOperator &rhs) {
    require_same_space(rhs);
    matrix_ += rhs.matrix_;
    hermitian_ = hermitian_ && rhs.hermitian_;
    return *this;
}

ManyBodyOperator &ManyBodyOperator::operator-=(const ManyBodyOperator &rhs) {
    require_same_space(rhs);
    matrix_ -= rhs.matrix_;
    hermitian_ = hermitian_ && rhs.hermitian_;
    return *this;
}

ManyBodyOperator &ManyBodyOperator::operator*=(Complex s) {
    matrix_ *= s;
    hermitian_ = hermitian_ && s.imag() == 0.0;
    return *this;
}

ManyBodyOperator &ManyBodyOperator::operator*=(double s) {
    matrix_ *= Complex(s, 0.0);
    return *this;
}

ManyBodyOperator operator*(const ManyBodyOperator &a, const ManyBodyOperator &b) {
    a.require_same_space(b);
    SparseComplexMatrix prod = a.matrix_ * b.matrix_;
    prod.prune([](Eigen::Index, Eigen::Index, const Complex &v) { return v != Complex(0.0, 0.0); });
    return {a.space_, std::move(prod), false};
}

ManyBodyOperator embed(const SingleModeOperator &op, std::size_t mode, const FockSpace &space) {
    if (mode >= space.num_modes())
        throw DimensionError(fmt::format("mode {} outside a {}-mode space", mode, space.num_modes()));
    if (op.dim() != space.local_dim(mode))
        throw DimensionError(fmt::format("operator dimension {} does not match local dimension {} of mode {}",
                                         op.dim(), space.local_dim(mode), mode));
    const auto stride = static_cast<std::ptrdiff_t>(space.stride(mode));
    const auto local = static_cast<Eigen::Index>(op.dim());

    std::vector<Eigen::Triplet<Complex>> triplets;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> nz;
    for (Eigen::Index c = 0; c < local; ++c)
        for (Eigen::Index r = 0; r < local; ++r)
            if (op.matrix(r, c) != Complex(0.0, 0.0))
                nz.emplace_back(r, c);
    triplets.reserve(nz.size() * space.dimension() / static_cast<std::size_t>(local));

    for (std::size_t col = 0; col < space.dimension(); ++col) {
        const auto lc = static_cast<Eigen::Index>(space.level(col, mode));
        for (const auto &[r, c] : nz) {
            if (c != lc)
                continue;
            const auto row = static_cast<std::ptrdiff_t>(col) + (r - c) * stride;
            triplets.emplace_back(row, static_cast<Eigen::Index>(col), op.matrix(r, c));
        }
    }
    const auto d = static_cast<Eigen::Index>(space.dimension());
    SparseComplexMatrix m(d, d);
    m.setFromTriplets(triplets.begin(), triplets.end());
    const bool herm = (op.matrix - ComplexMatrix(op.matrix.adjoint())).cwiseAbs().maxCoeff() == 0.0;
    return {space, std::move(m), herm};
}

ManyBodyOperator commutator(const ManyBodyOperator &a, const ManyBodyOperator &b) {
    return a * b - b * a;
}

} // namespace vibronic

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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vibronic/problem.hpp"
#include "vibronic/types.hpp"

namespace vibronic {

/// Truncated multi-mode Fock basis. Flat index is row-major over
/// (n_0, ..., n_{M-1}) with mode 0 varying slowest.
class FockSpace {
  public:
    FockSpace() = default;
    explicit FockSpace(ModeCutoffs cutoffs);

    std::size_t num_modes() const noexcept { return cutoffs_.size(); }
    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t max_level(std::size_t k) const { return cutoffs_[k]; }
    std::size_t local_dim(std::size_t k) const { return cutoffs_[k] + 1; }
    std::size_t stride(std::size_t k) const { return strides_.at(k); }
    const ModeCutoffs &cutoffs() const noexcept { return cutoffs_; }

    std::size_t flat_index(std::span<const std::size_t> levels) const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;
    /// Occupation of mode k in the basis state with the given flat index.
    std::size_t level(std::size_t flat, std::size_t k) const { return (flat / strides_[k]) % local_dim(k); }

    bool operator==(const FockSpace &other) const { return cutoffs_.max_levels == other.cutoffs_.max_levels; }

  private:
    ModeCutoffs cutoffs_;
    std::vector<std::size_t> strides_;
    std::size_t dimension_ = 0;
};

/// Dense operator on one mode's (L_max + 1)-dimensional space.
struct SingleModeOperator {
    ComplexMatrix matrix;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    std::size_t max_level() const noexcept { return dim() - 1; }
    SingleModeOperator operator*(const SingleModeOperator &rhs) const;
};

SingleModeOperator creation(std::size_t max_level);
SingleModeOperator annihilation(std::size_t max_level);
SingleModeOperator position(std::size_t max_level);
SingleModeOperator momentum(std::size_t max_level);
SingleModeOperator number(std::size_t max_level);
SingleModeOperator identity(std::size_t max_level);

inline constexpr double kHermiticityTolerance = 1e-10;

/// Operator on a FockSpace, stored sparse. `hermitian()` is a flag that
/// arithmetic propagates conservatively; `hermiticity_deviation()` measures.
class ManyBodyOperator {
  public:
    ManyBodyOperator() = default;
    ManyBodyOperator(FockSpace space, SparseComplexMatrix matrix, bool hermitian = false);

    static ManyBodyOperator identity(const FockSpace &space);
    static ManyBodyOperator zero(const FockSpace &space);

    const FockSpace &space() const noexcept { return space_; }
    const SparseComplexMatrix &matrix() const noexcept { return matrix_; }
    std::size_t dimension() const noexcept { return space_.dimension(); }
    bool hermitian() const noexcept { return hermitian_; }

    Complex element(std::size_t row, std::size_t col) const;
    ComplexMatrix to_dense() const;
    double hermiticity_deviation() const;
    /// Throws NumericalError when flagged Hermitian but the deviation exceeds tol.
    void verify_hermitian(double tol = kHermiticityTolerance) const;

    ManyBodyOperator adjoint() const;
    /// (A + A^dagger) / 2, flagged Hermitian.
    ManyBodyOperator symmetrized() const;

    ManyBodyOperator &operator+=(const ManyBodyOperator &rhs);
    ManyBodyOperator &operator-=(const ManyBodyOperator &rhs);
    ManyBodyOperator &operator*=(Complex s);
    ManyBodyOperator &operator*=(double s);

    friend ManyBodyOperator operator+(ManyBodyOperator a, const ManyBodyOperator &b) { return a += b; }
    friend ManyBodyOperator operator-(ManyBodyOperator a, const ManyBodyOperator &b) { return a -= b; }
    friend ManyBodyOperator operator*(ManyBodyOperator a, double s) { return a *= s; }
    friend ManyBodyOperator operator*(double s, ManyBodyOperator a) { return a *= s; }
    friend ManyBodyOperator operator*(ManyBodyOperator a, Complex s) { return a *= s; }
    friend ManyBodyOperator operator*(Complex s, ManyBodyOperator a) { return a *= s; }
    friend ManyBodyOperator operator*(const ManyBodyOperator &a, const ManyBodyOperator &b);

  private:
    void require_same_space(const ManyBodyOperator &rhs) const;

    FockSpace space_;
    SparseComplexMatrix matrix_;
    bool hermitian_ = false;
};

/// op on mode k, identity on every other mode.
ManyBodyOperator embed(const SingleModeOperator &op, std::size_t mode, const FockSpace &space);

ManyBodyOperator commutator(const ManyBodyOperator &a, const ManyBodyOperator &b);

} // namespace vibronic

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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vibronic/pauli.hpp"
#include "vibronic/types.hpp"

namespace vibronic {

inline constexpr std::size_t kStateVectorHardLimit = 30;

/// Dense amplitudes over n qubits; qubit q is bit q of the basis index.
class StateVector {
  public:
    explicit StateVector(std::size_t num_qubits);
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    std::size_t num_qubits() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex &operator[](std::size_t i) { return amps_[i]; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

    void apply_1q(std::size_t q, const std::array<Complex, 4> &m, std::uint64_t ctrl = 0);
    void hadamard(std::size_t q);
    void swap_qubits(std::size_t a, std::size_t b);
    /// Multiplies |11> on (control, target) by exp(i angle).
    void controlled_phase(std::size_t control, std::size_t target, double angle);
    void phase_on_mask(std::uint64_t mask, std::uint64_t value, Complex phase);
    /// exp(-i theta P) with P acting on qubits [offset, offset + P.size()).
    void pauli_rotation(const PauliString &p, std::size_t offset, double theta, std::uint64_t ctrl = 0);

    /// Inverse QFT on qubits [first, first + count), least significant first.
    void inverse_qft(std::size_t first, std::size_t count);

    double norm() const;
    void normalize();
    std::vector<double> probabilities() const;

  private:
    std::size_t n_ = 0;
    std::vector<Complex> amps_;
};

} // namespace vibronic

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

#include "vibronic/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "vibronic/error.hpp"
#include "vibronic/kernels/kernels.hpp"

namespace vibronic {

StateVector::StateVector(std::size_t num_qubits) : n_(num_qubits) {
    if (num_qubits > kStateVectorHardLimit)
        throw QubitBudgetError(fmt::format("{} qubits exceed the statevector limit of {}", num_qubits,
                                           kStateVectorHardLimit));
    amps_.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    if (amplitudes.empty() || !std::has_single_bit(amplitudes.size()))
        throw DimensionError(fmt::format("{} amplitudes is not a power of two", amplitudes.size()));
    StateVector s(0);
    s.n_ = static_cast<std::size_t>(std::countr_zero(amplitudes.size()));
    if (s.n_ > kStateVectorHardLimit)
        throw QubitBudgetError("statevector too large");
    s.amps_ = std::move(amplitudes);
    return s;
}

namespace {

void require_qubit(std::size_t q, std::size_t n) {
    if (q >= n)
        throw InvalidArgument(fmt::format("qubit {} outside a {}-qubit register", q, n));
}

} // namespace

void StateVector::apply_1q(std::size_t q, const std::array<Complex, 4> &m, std::uint64_t ctrl) {
    require_qubit(q, n_);
    if (ctrl & (std::uint64_t{1} << q))
        throw InvalidArgument("control and target coincide");
    kernels::active().apply_1q(amps_.data(), n_, q, m.data(), ctrl);
}

void StateVector::hadamard(std::size_t q) {
    const double h = std::numbers::sqrt2 / 2.0;
    apply_1q(q, {Complex(h), Complex(h), Complex(h), Complex(-h)});
}

void StateVector::swap_qubits(std::size_t a, std::size_t b) {
    require_qubit(a, n_);
    require_qubit(b, n_);
    if (a == b)
        return;
    const std::uint64_t ma = std::uint64_t{1} << a, mb = std::uint64_t{1} << b;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & ma) && !(i & mb))
            std::swap(amps_[i], amps_[(i & ~ma) | mb]);
}

void StateVector::controlled_phase(std::size_t control, std::size_t target, double angle) {
    require_qubit(control, n_);
    require_qubit(target, n_);
    if (control == target)
        throw InvalidArgument("control and target coincide");
    const std::uint64_t mask = (std::uint64_t{1} << control) | (std::uint64_t{1} << target);
    phase_on_mask(mask, mask, std::polar(1.0, angle));
}

void StateVector::phase_on_mask(std::uint64_t mask, std::uint64_t value, Complex phase) {
    kernels::active().phase_on_mask(amps_.data(), amps_.size(), mask, value, phase);
}

void StateVector::pauli_rotation(const PauliString &p, std::size_t offset, double theta, std::uint64_t ctrl) {
    if (offset + p.num_qubits() > n_)
        throw DimensionError(fmt::format("Pauli string on {} qubits at offset {} exceeds {} qubits", p.num_qubits(),
                                         offset, n_));
    const std::uint64_t x = p.x_words().empty() ? 0 : p.x_words()[0] << offset;
    const std::uint64_t z = p.z_words().empty() ? 0 : p.z_words()[0] << offset;
    if ((x | z) & ctrl)
        throw InvalidArgument("Pauli rotation overlaps its control");
    kernels::active().pauli_rotation(amps_.data(), amps_.size(), x, z, static_cast<unsigned>(p.y_count()), theta,
                                     ctrl);
}

void StateVector::inverse_qft(std::size_t first, std::size_t count) {
    if (first + count > n_)
        throw DimensionError("inverse QFT register exceeds the statevector");
    for (std::size_t i = 0; i < count / 2; ++i)
        swap_qubits(first + i, first + count - 1 - i);
    for (std::size_t j = 0; j < count; ++j) {
        for (std::size_t k = 0; k < j; ++k)
            controlled_phase(first + k, first + j, -std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - k)));
        hadamard(first + j);
    }
}

double StateVector::norm() const { return std::sqrt(kernels::active().norm_squared(amps_.data(), amps_.size())); }

void StateVector::normalize() {
    const double nrm = norm();
    if (!(nrm > 0.0))
        throw NumericalError("cannot normalize a zero state");
    for (auto &a : amps_)
        a /= nrm;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    kernels::active().probabilities(amps_.data(), p.data(), amps_.size());
    return p;
}

} // namespace vibronic

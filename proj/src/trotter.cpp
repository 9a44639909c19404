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

#include "vibronic/trotter.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

EvolutionBackend EvolutionBackend::trotter(int order, std::size_t steps) {
    if (order != 1 && order != 2)
        throw InvalidArgument(fmt::format("Trotter order must be 1 or 2, got {}", order));
    if (steps < 1)
        throw InvalidArgument("Trotter steps must be at least 1");
    return {Kind::Trotter, order, steps};
}

EvolutionBackend EvolutionBackend::parse(std::string_view text) {
    if (text == "exact")
        return exact();
    const std::string_view prefix = "trotter:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto rest = text.substr(prefix.size());
        const auto colon = rest.find(':');
        if (colon != std::string_view::npos) {
            int order = 0;
            std::size_t steps = 0;
            const auto a = rest.substr(0, colon), b = rest.substr(colon + 1);
            const auto ra = std::from_chars(a.data(), a.data() + a.size(), order);
            const auto rb = std::from_chars(b.data(), b.data() + b.size(), steps);
            if (ra.ec == std::errc() && ra.ptr == a.data() + a.size() && rb.ec == std::errc() &&
                rb.ptr == b.data() + b.size())
                return trotter(order, steps);
        }
    }
    throw InvalidArgument(fmt::format("backend '{}' is not 'exact' or 'trotter:<order>:<steps>'", text));
}

std::string EvolutionBackend::to_string() const {
    return kind == Kind::Exact ? "exact" : fmt::format("trotter:{}:{}", order, steps);
}

namespace {

struct Factor {
    PauliString string;
    double coefficient;
};

std::vector<Factor> real_factors(const PauliSum &h) {
    std::vector<Factor> out;
    for (const auto &[p, c] : h.terms()) {
        if (std::abs(c.imag()) > 1e-12 * std::max(1.0, std::abs(c)))
            throw InvalidArgument(fmt::format("Trotter evolution needs real coefficients; {} has {}+{}i", p.to_string(),
                                              c.real(), c.imag()));
        out.push_back({p, c.real()});
    }
    return out;
}

void apply_factor(StateVector &state, const Factor &f, std::size_t offset, double dt, std::uint64_t ctrl) {
    if (f.string.is_identity()) {
        const Complex phase = std::polar(1.0, -f.coefficient * dt);
        state.phase_on_mask(ctrl, ctrl, phase);
        return;
    }
    state.pauli_rotation(f.string, offset, f.coefficient * dt, ctrl);
}

void apply_formula(StateVector &state, const std::vector<Factor> &factors, std::size_t offset, double time, int order,
                   std::size_t steps, std::uint64_t ctrl) {
    if (order != 1 && order != 2)
        throw InvalidArgument(fmt::format("Trotter order must be 1 or 2, got {}", order));
    if (steps < 1)
        throw InvalidArgument("Trotter steps must be at least 1");
    const double dt = time / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        if (order == 1) {
            for (const auto &f : factors)
                apply_factor(state, f, offset, dt, ctrl);
        } else {
            for (const auto &f : factors)
                apply_factor(state, f, offset, 0.5 * dt, ctrl);
            for (auto it = factors.rbegin(); it != factors.rend(); ++it)
                apply_factor(state, *it, offset, 0.5 * dt, ctrl);
        }
    }
}

} // namespace

void trotter_evolution(StateVector &state, const PauliSum &h, std::size_t offset, double time, int order,
                       std::size_t steps, std::uint64_t ctrl) {
    apply_formula(state, real_factors(h), offset, time, order, steps, ctrl);
}

ComplexMatrix trotter_unitary(const PauliSum &h, double time, int order, std::size_t steps) {
    const auto factors = real_factors(h);
    const std::size_t n = h.num_qubits();
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<Complex> amps(dim, Complex(0.0, 0.0));
        amps[col] = 1.0;
        auto state = StateVector::from_amplitudes(std::move(amps));
        apply_formula(state, factors, 0, time, order, steps, 0);
        for (std::size_t r = 0; r < dim; ++r)
            u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = state[r];
    }
    return u;
}

} // namespace vibronic

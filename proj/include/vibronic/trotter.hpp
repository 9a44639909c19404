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
#include <cstdint>
#include <string>
#include <string_view>

#include "vibronic/pauli.hpp"
#include "vibronic/statevector.hpp"

namespace vibronic {

/// Exact controlled unitaries, or a Trotter product formula with the given
/// order (1 or 2) and number of steps per unit of tau.
struct EvolutionBackend {
    enum class Kind { Exact, Trotter };
    Kind kind = Kind::Exact;
    int order = 1;
    std::size_t steps = 1;

    static EvolutionBackend exact() { return {}; }
    static EvolutionBackend trotter(int order, std::size_t steps);
    /// "exact" or "trotter:<order>:<steps>".
    static EvolutionBackend parse(std::string_view text);
    std::string to_string() const;
};

/// Applies the Trotterized exp(-i time H) to qubits [offset, offset + N) of
/// the state, on the subspace where every bit of ctrl is set. Terms are taken
/// in PauliSum order; order 2 is the symmetric splitting.
void trotter_evolution(StateVector &state, const PauliSum &h, std::size_t offset, double time, int order,
                       std::size_t steps, std::uint64_t ctrl = 0);

/// Dense 2^N matrix of the same product formula.
ComplexMatrix trotter_unitary(const PauliSum &h, double time, int order, std::size_t steps);

} // namespace vibronic

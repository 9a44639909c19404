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
#include <map>
#include <vector>

#include "vibronic/encoding.hpp"
#include "vibronic/fock.hpp"
#include "vibronic/hamiltonian.hpp"
#include "vibronic/pauli.hpp"

namespace vibronic {

/// |enc(l)><enc(l')| on one mode, identity on the rest of the layout.
/// Binary expands every qubit of the mode. Unary uses (I - Z_l)/2 for l = l'
/// and the two-qubit form |1><0|_l |0><1|_l' otherwise.
PauliSum levelpair_to_pauli(std::size_t l, std::size_t l_prime, std::size_t mode, const QubitLayout &layout);

/// The identity, single-mode or full, maps to the all-I string in either encoding.
PauliSum map_operator(const SingleModeOperator &op, std::size_t mode, const QubitLayout &layout);
PauliSum map_operator(const std::vector<ProductTerm> &terms, const QubitLayout &layout);
PauliSum map_operator(const ManyBodyOperator &op, const QubitLayout &layout);

inline constexpr std::size_t kMaxVerificationQubits = 24;

/// Sum of c * (tensor of letter matrices), qubit q on bit q of the index.
SparseComplexMatrix pauli_to_matrix(const PauliSum &ps, std::size_t max_qubits = kMaxVerificationQubits);

/// Rows and columns of a full qubit-space matrix at the layout's codewords,
/// in FockSpace flat order.
ComplexMatrix restrict_to_codespace(const SparseComplexMatrix &full, const QubitLayout &layout);

struct ResourceReport {
    std::size_t term_count = 0;
    std::map<std::size_t, std::size_t> weight_histogram; ///< Pauli weight -> term count
    /// Greedy first-fit layering of non-identity terms by disjoint support.
    /// An estimate of Trotter-step depth, not a schedule.
    std::size_t layer_depth = 0;
};

ResourceReport resource_count(const PauliSum &ps);

} // namespace vibronic

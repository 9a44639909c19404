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
#include <string_view>

#include "vibronic/types.hpp"

namespace vibronic::kernels {

/// Statevector kernels. Every table entry has the same semantics; the AVX2
/// table is only handed out when the CPU reports AVX2 and FMA.
struct KernelTable {
    const char *name;

    /// 2x2 gate {m00, m01, m10, m11} on qubit `target`, restricted to basis
    /// states with (i & ctrl) == ctrl.
    void (*apply_1q)(Complex *psi, std::size_t num_qubits, std::size_t target, const Complex *m, std::uint64_t ctrl);

    /// psi[i] *= phase wherever (i & mask) == value.
    void (*phase_on_mask)(Complex *psi, std::size_t dim, std::uint64_t mask, std::uint64_t value, Complex phase);

    /// exp(-i theta P) with P = i^{y} X^x Z^z, on states with (i & ctrl) == ctrl.
    void (*pauli_rotation)(Complex *psi, std::size_t dim, std::uint64_t x, std::uint64_t z, unsigned y_count,
                           double theta, std::uint64_t ctrl);

    /// y = A x for a column-major n x n matrix.
    void (*matvec)(const Complex *a, const Complex *x, Complex *y, std::size_t n);

    double (*norm_squared)(const Complex *psi, std::size_t dim);
    void (*probabilities)(const Complex *psi, double *out, std::size_t dim);
};

const KernelTable &scalar_table();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable *avx2_table();
/// The table used by the emulator: AVX2 when available, unless the
/// VIBRONIC_KERNELS environment variable says "scalar".
const KernelTable &active();
/// Forces a table by name ("scalar", "avx2" or "auto"); false if unavailable.
bool select(std::string_view name);

} // namespace vibronic::kernels

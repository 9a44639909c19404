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

#include <bit>

#include "kernels_impl.hpp"

namespace vibronic::kernels {

namespace {

void apply_1q(Complex *psi, std::size_t num_qubits, std::size_t target, const Complex *m, std::uint64_t ctrl) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            if ((i & ctrl) != ctrl)
                continue;
            const Complex a0 = psi[i], a1 = psi[i + stride];
            psi[i] = m[0] * a0 + m[1] * a1;
            psi[i + stride] = m[2] * a0 + m[3] * a1;
        }
}

void phase_on_mask(Complex *psi, std::size_t dim, std::uint64_t mask, std::uint64_t value, Complex phase) {
    for (std::size_t i = 0; i < dim; ++i)
        if ((i & mask) == value)
            psi[i] *= phase;
}

void pauli_rotation(Complex *psi, std::size_t dim, std::uint64_t x, std::uint64_t z, unsigned y_count, double theta,
                    std::uint64_t ctrl) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex ia = ipow(y_count);
    // -i sin(theta) i^a
    const Complex k = Complex(0.0, -s) * ia;
    if (x == 0) {
        const Complex plus = c + k, minus = c - k;
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & ctrl) != ctrl)
                continue;
            psi[i] *= (std::popcount(i & z) & 1) ? minus : plus;
        }
        return;
    }
    const std::uint64_t high = std::uint64_t{1} << (63 - std::countl_zero(x));
    for (std::size_t b = 0; b < dim; ++b) {
        if ((b & high) || (b & ctrl) != ctrl)
            continue;
        const std::size_t bp = b ^ x;
        const Complex cb = (std::popcount(bp & z) & 1) ? -k : k;  // <b|P|b'> term
        const Complex cbp = (std::popcount(b & z) & 1) ? -k : k; // <b'|P|b> term
        const Complex a = psi[b], ap = psi[bp];
        psi[b] = c * a + cb * ap;
        psi[bp] = c * ap + cbp * a;
    }
}

void matvec(const Complex *a, const Complex *x, Complex *y, std::size_t n) {
    for (std::size_t r = 0; r < n; ++r)
        y[r] = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        const Complex xc = x[col];
        if (xc == Complex(0.0, 0.0))
            continue;
        const Complex *ac = a + col * n;
        for (std::size_t r = 0; r < n; ++r)
            y[r] += ac[r] * xc;
    }
}

double norm_squared(const Complex *psi, std::size_t dim) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        s += std::norm(psi[i]);
    return s;
}

void probabilities(const Complex *psi, double *out, std::size_t dim) {
    for (std::size_t i = 0; i < dim; ++i)
        out[i] = std::norm(psi[i]);
}

} // namespace

const KernelTable &scalar_table() {
    static const KernelTable table{"scalar", apply_1q, phase_on_mask, pauli_rotation, matvec, norm_squared,
                                   probabilities};
    return table;
}

} // namespace vibronic::kernels

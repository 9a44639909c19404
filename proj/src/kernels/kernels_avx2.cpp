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

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace vibronic::kernels {

namespace {

// Two complex doubles per register, [re0, im0, re1, im1].
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_swap = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

inline __m256d load2(const Complex *p) { return _mm256_loadu_pd(reinterpret_cast<const double *>(p)); }
inline void store2(Complex *p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double *>(p), v); }
inline __m256d broadcast(Complex c) { return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag()); }
inline __m256d pair(Complex lo, Complex hi) { return _mm256_setr_pd(lo.real(), lo.imag(), hi.real(), hi.imag()); }

void apply_1q(Complex *psi, std::size_t num_qubits, std::size_t target, const Complex *m, std::uint64_t ctrl) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t stride = std::size_t{1} << target;
    if (dim < 2 || (ctrl & 1U)) {
        scalar_table().apply_1q(psi, num_qubits, target, m, ctrl);
        return;
    }
    if (stride == 1) {
        const __m256d col0 = pair(m[0], m[2]);
        const __m256d col1 = pair(m[1], m[3]);
        for (std::size_t i = 0; i < dim; i += 2) {
            if ((i & ctrl) != ctrl)
                continue;
            const __m256d v = load2(psi + i);
            const __m256d a0 = _mm256_permute2f128_pd(v, v, 0x00);
            const __m256d a1 = _mm256_permute2f128_pd(v, v, 0x11);
            store2(psi + i, _mm256_add_pd(cmul(a0, col0), cmul(a1, col1)));
        }
        return;
    }
    const __m256d m00 = broadcast(m[0]), m01 = broadcast(m[1]), m10 = broadcast(m[2]), m11 = broadcast(m[3]);
    for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t i = base; i < base + stride; i += 2) {
            if ((i & ctrl) != ctrl)
                continue;
            const __m256d a0 = load2(psi + i), a1 = load2(psi + i + stride);
            store2(psi + i, _mm256_add_pd(cmul(a0, m00), cmul(a1, m01)));
            store2(psi + i + stride, _mm256_add_pd(cmul(a0, m10), cmul(a1, m11)));
        }
}

void phase_on_mask(Complex *psi, std::size_t dim, std::uint64_t mask, std::uint64_t value, Complex phase) {
    if (dim < 2 || (mask & 1U)) {
        scalar_table().phase_on_mask(psi, dim, mask, value, phase);
        return;
    }
    const __m256d p = broadcast(phase);
    for (std::size_t i = 0; i < dim; i += 2)
        if ((i & mask) == value)
            store2(psi + i, cmul(load2(psi + i), p));
}

void pauli_rotation(Complex *psi, std::size_t dim, std::uint64_t x, std::uint64_t z, unsigned y_count, double theta,
                    std::uint64_t ctrl) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex k = Complex(0.0, -s) * ipow(y_count);
    if (x == 0) {
        if (dim < 2 || (ctrl & 1U)) {
            scalar_table().pauli_rotation(psi, dim, x, z, y_count, theta, ctrl);
            return;
        }
        const Complex plus = c + k, minus = c - k;
        for (std::size_t i = 0; i < dim; i += 2) {
            if ((i & ctrl) != ctrl)
                continue;
            const Complex f0 = (std::popcount(i & z) & 1) ? minus : plus;
            const Complex f1 = (std::popcount((i + 1) & z) & 1) ? minus : plus;
            store2(psi + i, cmul(load2(psi + i), pair(f0, f1)));
        }
        return;
    }
    const __m256d cv = _mm256_set1_pd(c);
    const std::uint64_t high = std::uint64_t{1} << (63 - std::countl_zero(x));
    for (std::size_t b = 0; b < dim; ++b) {
        if ((b & high) || (b & ctrl) != ctrl)
            continue;
        const std::size_t bp = b ^ x;
        const Complex cb = (std::popcount(bp & z) & 1) ? -k : k;
        const Complex cbp = (std::popcount(b & z) & 1) ? -k : k;
        const __m128d lo = _mm_loadu_pd(reinterpret_cast<const double *>(psi + b));
        const __m128d hi = _mm_loadu_pd(reinterpret_cast<const double *>(psi + bp));
        const __m256d v = _mm256_set_m128d(hi, lo);
        const __m256d w = _mm256_set_m128d(lo, hi);
        const __m256d r = _mm256_fmadd_pd(cv, v, cmul(w, pair(cb, cbp)));
        _mm_storeu_pd(reinterpret_cast<double *>(psi + b), _mm256_castpd256_pd128(r));
        _mm_storeu_pd(reinterpret_cast<double *>(psi + bp), _mm256_extractf128_pd(r, 1));
    }
}

void matvec(const Complex *a, const Complex *x, Complex *y, std::size_t n) {
    for (std::size_t r = 0; r < n; ++r)
        y[r] = 0.0;
    const std::size_t even = n & ~std::size_t{1};
    for (std::size_t col = 0; col < n; ++col) {
        const Complex xc = x[col];
        if (xc == Complex(0.0, 0.0))
            continue;
        const __m256d xv = broadcast(xc);
        const Complex *ac = a + col * n;
        std::size_t r = 0;
        for (; r < even; r += 2)
            store2(y + r, _mm256_add_pd(load2(y + r), cmul(load2(ac + r), xv)));
        for (; r < n; ++r)
            y[r] += ac[r] * xc;
    }
}

double norm_squared(const Complex *psi, std::size_t dim) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= dim; i += 2) {
        const __m256d v = load2(psi + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < dim; ++i)
        s += std::norm(psi[i]);
    return s;
}

void probabilities(const Complex *psi, double *out, std::size_t dim) {
    std::size_t i = 0;
    for (; i + 4 <= dim; i += 4) {
        const __m256d a = load2(psi + i), b = load2(psi + i + 2);
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
    }
    for (; i < dim; ++i)
        out[i] = std::norm(psi[i]);
}

} // namespace

const KernelTable &avx2_table_unchecked() {
    static const KernelTable table{"avx2", apply_1q, phase_on_mask, pauli_rotation, matvec, norm_squared,
                                   probabilities};
    return table;
}

} // namespace vibronic::kernels

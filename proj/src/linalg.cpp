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

#include "vibronic/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>
#include <lapacke.h>

#include "vibronic/error.hpp"

namespace vibronic {

namespace {

bool is_real(const ComplexMatrix &h) { return h.imag().cwiseAbs().maxCoeff() == 0.0; }

void require_square(const ComplexMatrix &h) {
    if (h.rows() != h.cols())
        throw DimensionError(fmt::format("matrix is {}x{}, expected square", h.rows(), h.cols()));
}

void require_hermitian(const ComplexMatrix &h) {
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermiticityTolerance * scale)
        throw NumericalError(fmt::format("eigensolver input is not Hermitian (deviation {:.3e})", dev));
}

void check_info(lapack_int info, const char *routine) {
    if (info != 0)
        throw NumericalError(fmt::format("{} failed with info = {}", routine, info));
}

// Swaps basis states 0 and index so that the target vector is e_0.
ComplexMatrix move_to_front(const ComplexMatrix &h, std::size_t index) {
    if (index == 0)
        return h;
    const auto i = static_cast<Eigen::Index>(index);
    ComplexMatrix p = h;
    p.row(0).swap(p.row(i));
    p.col(0).swap(p.col(i));
    return p;
}

SpectralWeights sorted_weights(const RealVector &d, const RealVector &z) {
    const auto n = d.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });
    SpectralWeights out;
    out.values.resize(n);
    out.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto k = order[static_cast<std::size_t>(i)];
        out.values[i] = d[k];
        out.weights[i] = z[k] * z[k];
    }
    return out;
}

} // namespace

Eigensystem hermitian_eigensystem(const ComplexMatrix &h) {
    require_square(h);
    require_hermitian(h);
    const auto n = static_cast<lapack_int>(h.rows());
    Eigensystem out;
    out.values.resize(n);
    if (n == 0)
        return out;
    if (is_real(h)) {
        RealMatrix a = h.real();
        check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, out.values.data()), "dsyevd");
        out.vectors = a.cast<Complex>();
    } else {
        ComplexMatrix a = h;
        check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, reinterpret_cast<lapack_complex_double *>(a.data()),
                                  n, out.values.data()),
                   "zheevd");
        out.vectors = std::move(a);
    }
    return out;
}

Eigensystem hermitian_eigensystem(const ManyBodyOperator &h) { return hermitian_eigensystem(h.to_dense()); }

void tridiagonal_first_row(RealVector &d, RealVector &offdiag, RealVector &z) {
    const int n = static_cast<int>(d.size());
    z = RealVector::Zero(n);
    if (n == 0)
        return;
    z[0] = 1.0;
    RealVector e = RealVector::Zero(n);
    for (int i = 0; i + 1 < n; ++i)
        e[i] = offdiag[i];
    const double eps = std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd)
                    break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw NumericalError("tridiagonal QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = (r = std::hypot(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

SpectralWeights spectral_weights(const ComplexMatrix &h_in, std::size_t basis_index) {
    require_square(h_in);
    require_hermitian(h_in);
    if (basis_index >= static_cast<std::size_t>(h_in.rows()))
        throw InvalidArgument(fmt::format("basis index {} outside dimension {}", basis_index, h_in.rows()));
    const auto n = static_cast<lapack_int>(h_in.rows());
    const ComplexMatrix h = move_to_front(h_in, basis_index);

    // With uplo = 'L' the reflectors act on rows 2..n, so Q e_1 = e_1 and the
    // first eigenvector component of T equals <e_1|psi>.
    RealVector d(n), e(std::max<lapack_int>(n - 1, 1));
    if (is_real(h)) {
        RealMatrix a = h.real();
        RealVector tau(std::max<lapack_int>(n - 1, 1));
        check_info(LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'L', n, a.data(), n, d.data(), e.data(), tau.data()), "dsytrd");
    } else {
        ComplexMatrix a = h;
        ComplexVector tau(std::max<lapack_int>(n - 1, 1));
        check_info(LAPACKE_zhetrd(LAPACK_COL_MAJOR, 'L', n, reinterpret_cast<lapack_complex_double *>(a.data()), n,
                                  d.data(), e.data(), reinterpret_cast<lapack_complex_double *>(tau.data())),
                   "zhetrd");
    }
    RealVector z;
    tridiagonal_first_row(d, e, z);
    return sorted_weights(d, z);
}

namespace {

class LowerBand {
  public:
    LowerBand(RealMatrix &storage, Eigen::Index cap) : a_(storage), cap_(cap), n_(storage.cols()) {}

    double get(Eigen::Index i, Eigen::Index j) const {
        if (i < j)
            std::swap(i, j);
        return i - j > cap_ ? 0.0 : a_(i - j, j);
    }

    /// Rotates rows and columns (p, p + 1) to annihilate A(p + 1, x0), x0 < p.
    /// `reach` bounds the current bandwidth including the bulge.
    void annihilate(Eigen::Index p, Eigen::Index x0, Eigen::Index reach) {
        const Eigen::Index q = p + 1;
        double *col = a_.data();
        const Eigen::Index ld = a_.rows();
        const double a = a_(p - x0, x0), b = a_(q - x0, x0);
        if (b == 0.0)
            return;
        const double r = std::hypot(a, b);
        const double c = a / r, s = b / r;
        // Columns left of p: A(p, x) and A(q, x) are adjacent in column x.
        for (Eigen::Index x = std::max<Eigen::Index>(0, q - reach); x < p; ++x) {
            double *e = col + x * ld + (p - x);
            const double ap = e[0], aq = e[1];
            e[0] = c * ap + s * aq;
            e[1] = -s * ap + c * aq;
        }
        a_(q - x0, x0) = 0.0;
        // Rows below q: A(x, p) in column p, A(x, q) in column q.
        const Eigen::Index hi = std::min(n_ - 1, p + reach);
        double *cp = col + p * ld, *cq = col + q * ld;
        for (Eigen::Index x = q + 1; x <= hi; ++x) {
            const double ap = cp[x - p], aq = cq[x - q];
            cp[x - p] = c * ap + s * aq;
            cq[x - q] = -s * ap + c * aq;
        }
        const double app = cp[0], aqq = cq[0], apq = cp[1];
        cp[0] = c * c * app + 2.0 * c * s * apq + s * s * aqq;
        cq[0] = s * s * app - 2.0 * c * s * apq + c * c * aqq;
        cp[1] = c * s * (aqq - app) + (c * c - s * s) * apq;
    }

  private:
    RealMatrix &a_;
    Eigen::Index cap_;
    Eigen::Index n_;
};

} // namespace

void band_to_tridiagonal(RealMatrix &lower_band, std::size_t bandwidth, RealVector &diag, RealVector &offdiag) {
    const Eigen::Index n = lower_band.cols();
    const auto b = static_cast<Eigen::Index>(bandwidth);
    if (lower_band.rows() < b + 2)
        throw DimensionError("band storage needs bandwidth + 2 rows");
    LowerBand band(lower_band, b + 1);
    // Schwarz: peel the outermost diagonal, chasing each bulge off the end.
    for (Eigen::Index k = b; k >= 2; --k) {
        for (Eigen::Index i = 0; i + k < n; ++i) {
            if (band.get(i + k, i) == 0.0)
                continue;
            band.annihilate(i + k - 1, i, k + 1);
            for (Eigen::Index col = i + k - 1, row = col + k + 1; row < n; col = row - 1, row = col + k + 1) {
                if (band.get(row, col) == 0.0)
                    break;
                band.annihilate(row - 1, col, k + 1);
            }
        }
    }
    diag.resize(n);
    offdiag.resize(std::max<Eigen::Index>(n - 1, 1));
    offdiag.setZero();
    for (Eigen::Index i = 0; i < n; ++i)
        diag[i] = lower_band(0, i);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        offdiag[i] = lower_band(1, i);
}

SpectralWeights spectral_weights_band(const RealMatrix &lower_band, std::size_t bandwidth) {
    const auto b = static_cast<Eigen::Index>(bandwidth);
    if (lower_band.rows() < b + 1)
        throw DimensionError("band storage has fewer rows than bandwidth + 1");
    RealMatrix work = RealMatrix::Zero(b + 2, lower_band.cols());
    work.topRows(b + 1) = lower_band.topRows(b + 1);
    RealVector d, e, z;
    band_to_tridiagonal(work, bandwidth, d, e);
    tridiagonal_first_row(d, e, z);
    return sorted_weights(d, z);
}

SpectralWeights spectral_weights(const ManyBodyOperator &h, std::size_t basis_index) {
    const auto &m = h.matrix();
    const auto n = static_cast<Eigen::Index>(h.dimension());
    bool real = true;
    for (Eigen::Index k = 0; k < m.outerSize() && real; ++k)
        for (SparseComplexMatrix::InnerIterator it(m, k); it; ++it)
            if (it.value().imag() != 0.0) {
                real = false;
                break;
            }
    if (!real || basis_index != 0 || n < 64)
        return spectral_weights(h.to_dense(), basis_index);

    // Reorder modes so the smallest local dimension varies fastest; the vacuum
    // stays at index 0 under any mode order.
    const auto &space = h.space();
    std::vector<std::size_t> modes(space.num_modes());
    std::iota(modes.begin(), modes.end(), 0);
    std::stable_sort(modes.begin(), modes.end(),
                     [&](auto a, auto b) { return space.local_dim(a) < space.local_dim(b); });
    std::vector<std::size_t> new_stride(space.num_modes());
    std::size_t stride = 1;
    for (auto k : modes) {
        new_stride[k] = stride;
        stride *= space.local_dim(k);
    }
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    for (std::size_t flat = 0; flat < static_cast<std::size_t>(n); ++flat) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < space.num_modes(); ++k)
            idx += space.level(flat, k) * new_stride[k];
        perm[flat] = static_cast<Eigen::Index>(idx);
    }
    Eigen::Index bandwidth = 0;
    for (Eigen::Index k = 0; k < m.outerSize(); ++k)
        for (SparseComplexMatrix::InnerIterator it(m, k); it; ++it)
            bandwidth = std::max(bandwidth, std::abs(perm[static_cast<std::size_t>(it.row())] -
                                                     perm[static_cast<std::size_t>(it.col())]));
    if (bandwidth > n / 8)
        return spectral_weights(h.to_dense(), basis_index);

    RealMatrix band = RealMatrix::Zero(bandwidth + 1, n);
    for (Eigen::Index k = 0; k < m.outerSize(); ++k)
        for (SparseComplexMatrix::InnerIterator it(m, k); it; ++it) {
            const auto i = perm[static_cast<std::size_t>(it.row())], j = perm[static_cast<std::size_t>(it.col())];
            if (i >= j)
                band(i - j, j) += 0.5 * it.value().real();
            if (i <= j)
                band(j - i, i) += 0.5 * it.value().real();
        }
    return spectral_weights_band(band, static_cast<std::size_t>(bandwidth));
}

} // namespace vibronic

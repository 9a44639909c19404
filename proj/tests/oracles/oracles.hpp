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

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

// Reference computations that share no code with the library.
namespace oracle {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Normalized Hermite functions h_0..h_n at x by the stable three-term recurrence.
inline std::vector<double> hermite_functions(std::size_t n, double x) {
    std::vector<double> h(n + 1);
    h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n >= 1)
        h[1] = std::sqrt(2.0) * x * h[0];
    for (std::size_t k = 2; k <= n; ++k)
        h[k] = std::sqrt(2.0 / static_cast<double>(k)) * x * h[k - 1] -
               std::sqrt(static_cast<double>(k - 1) / static_cast<double>(k)) * h[k - 2];
    return h;
}

inline double poisson_fcf(double delta, std::size_t n) {
    const double lambda = 0.5 * delta * delta;
    return std::exp(-lambda + static_cast<double>(n) * std::log(lambda) - std::lgamma(static_cast<double>(n) + 1.0));
}

// <0_A | n_B> for a two-mode problem by trapezoidal quadrature in q_A, with
// q_B = J q_A + delta. Returns the overlap matrix indexed (n_0, n_1).
inline MatrixXd two_mode_overlaps(const MatrixXd &j, const VectorXd &delta, std::size_t nmax, double half_width = 9.0,
                                  std::size_t points = 241) {
    const double h = 2.0 * half_width / static_cast<double>(points - 1);
    const double norm = std::sqrt(std::abs(j.determinant()));
    MatrixXd out = MatrixXd::Zero(static_cast<Eigen::Index>(nmax + 1), static_cast<Eigen::Index>(nmax + 1));
    for (std::size_t a = 0; a < points; ++a) {
        const double x0 = -half_width + h * static_cast<double>(a);
        for (std::size_t b = 0; b < points; ++b) {
            const double x1 = -half_width + h * static_cast<double>(b);
            const double g = std::exp(-0.5 * (x0 * x0 + x1 * x1)) / std::sqrt(std::numbers::pi);
            const double y0 = j(0, 0) * x0 + j(0, 1) * x1 + delta[0];
            const double y1 = j(1, 0) * x0 + j(1, 1) * x1 + delta[1];
            const auto h0 = hermite_functions(nmax, y0);
            const auto h1 = hermite_functions(nmax, y1);
            for (std::size_t n0 = 0; n0 <= nmax; ++n0)
                for (std::size_t n1 = 0; n1 <= nmax; ++n1)
                    out(static_cast<Eigen::Index>(n0), static_cast<Eigen::Index>(n1)) += g * h0[n0] * h1[n1];
        }
    }
    return out * (h * h * norm);
}

// Truncated single-mode matrices, entry (row, col) = <row|op|col>.
inline MatrixXd dense_creation(std::size_t lmax) {
    MatrixXd a = MatrixXd::Zero(static_cast<Eigen::Index>(lmax + 1), static_cast<Eigen::Index>(lmax + 1));
    for (std::size_t l = 1; l <= lmax; ++l)
        a(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l - 1)) = std::sqrt(static_cast<double>(l));
    return a;
}

inline MatrixXcd dense_position(std::size_t lmax) {
    const MatrixXd c = dense_creation(lmax);
    return ((c + c.transpose()) / std::sqrt(2.0)).cast<Complex>();
}

inline MatrixXcd dense_momentum(std::size_t lmax) {
    const MatrixXd c = dense_creation(lmax);
    return Complex(0.0, 1.0) * ((c - c.transpose()) / std::sqrt(2.0)).cast<Complex>();
}

// Kronecker product with the first factor on the slowest index.
inline MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// op on mode k of a product space, mode 0 slowest.
inline MatrixXcd embed(const MatrixXcd &op, std::size_t k, const std::vector<std::size_t> &lmax) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (std::size_t m = 0; m < lmax.size(); ++m) {
        const auto d = static_cast<Eigen::Index>(lmax[m] + 1);
        out = kron(out, m == k ? op : MatrixXcd::Identity(d, d));
    }
    return out;
}

// sum_k omega_B,k / 2 (q_B,k^2 + p_B,k^2) from Kronecker products.
inline MatrixXcd harmonic_hamiltonian(const VectorXd &omega_a, const VectorXd &omega_b, const MatrixXd &s,
                                      const VectorXd &delta, const std::vector<std::size_t> &lmax) {
    const auto m = static_cast<Eigen::Index>(lmax.size());
    const MatrixXd j = omega_b.cwiseSqrt().asDiagonal() * s * omega_a.cwiseSqrt().cwiseInverse().asDiagonal();
    const MatrixXd k = j.inverse().transpose();
    std::vector<MatrixXcd> qa, pa;
    for (std::size_t mode = 0; mode < lmax.size(); ++mode) {
        qa.push_back(embed(dense_position(lmax[mode]), mode, lmax));
        pa.push_back(embed(dense_momentum(lmax[mode]), mode, lmax));
    }
    const auto d = qa.front().rows();
    MatrixXcd h = MatrixXcd::Zero(d, d);
    for (Eigen::Index r = 0; r < m; ++r) {
        MatrixXcd q = delta[r] * MatrixXcd::Identity(d, d);
        MatrixXcd p = MatrixXcd::Zero(d, d);
        for (Eigen::Index c = 0; c < m; ++c) {
            q += j(r, c) * qa[static_cast<std::size_t>(c)];
            p += k(r, c) * pa[static_cast<std::size_t>(c)];
        }
        h += 0.5 * omega_b[r] * (q * q + p * p);
    }
    return h;
}

// Unitary inverse DFT on n points, F(k, m) = exp(-2 pi i k m / n) / sqrt(n).
inline MatrixXcd inverse_dft(std::size_t n) {
    MatrixXcd f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
            f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) =
                std::polar(s, -2.0 * std::numbers::pi * static_cast<double>((k * m) % n) / static_cast<double>(n));
    return f;
}

// exp(a) by scaling, a degree-20 Taylor polynomial and repeated squaring.
inline MatrixXcd expm(const MatrixXcd &a) {
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5)
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const MatrixXcd x = a / std::ldexp(1.0, squarings);
    MatrixXcd term = MatrixXcd::Identity(a.rows(), a.cols());
    MatrixXcd sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s)
        sum = sum * sum;
    return sum;
}

// Closed-form Boltzmann weight of level n of one untruncated mode.
inline double boltzmann(double omega, double beta, std::size_t n) {
    const double x = std::exp(-beta * omega);
    return (1.0 - x) * std::pow(x, static_cast<double>(n));
}

// Tensor product of 2x2 letters, qubit q on bit q of the index.
inline MatrixXcd pauli_matrix(const std::string &letters) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (char c : letters) {
        MatrixXcd p(2, 2);
        switch (c) {
        case 'X': p << 0, 1, 1, 0; break;
        case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': p << 1, 0, 0, -1; break;
        default: p = MatrixXcd::Identity(2, 2);
        }
        out = kron(p, out);
    }
    return out;
}

} // namespace oracle

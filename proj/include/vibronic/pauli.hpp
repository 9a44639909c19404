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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vibronic/types.hpp"

namespace vibronic {

/// Pauli string in symplectic form, P = i^{|x & z|} X^x Z^z, so x = z = 1 on a
/// qubit is Y. Text form has qubit 0 leftmost.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits);
    static PauliString from_string(std::string_view letters);

    std::size_t num_qubits() const noexcept { return n_; }
    char at(std::size_t q) const;
    void set(std::size_t q, char letter);
    bool x_bit(std::size_t q) const { return (x_[q / 64] >> (q % 64)) & 1U; }
    bool z_bit(std::size_t q) const { return (z_[q / 64] >> (q % 64)) & 1U; }
    const std::vector<std::uint64_t> &x_words() const noexcept { return x_; }
    const std::vector<std::uint64_t> &z_words() const noexcept { return z_; }

    std::size_t weight() const;
    bool is_identity() const { return weight() == 0; }
    /// Number of Y letters, the exponent a in i^a.
    std::size_t y_count() const;
    /// Union of the X and Z masks.
    std::vector<std::uint64_t> support() const;
    bool commutes_with(const PauliString &other) const;
    std::string to_string() const;

    /// Letter-wise order with I < X < Y < Z from qubit 0.
    bool operator<(const PauliString &other) const;
    bool operator==(const PauliString &other) const { return n_ == other.n_ && x_ == other.x_ && z_ == other.z_; }

    /// a * b = i^phase * result, phase in 0..3.
    friend std::pair<int, PauliString> multiply(const PauliString &a, const PauliString &b);
    /// Letters of a on [0, a.n) and b on [a.n, a.n + b.n).
    friend PauliString concat(const PauliString &a, const PauliString &b);
    /// Same letters moved to qubits [offset, offset + n) of a wider string.
    PauliString placed(std::size_t total_qubits, std::size_t offset) const;

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> x_, z_;
};

inline constexpr double kPauliPruneTolerance = 1e-14;

/// Weighted Pauli strings, deduplicated, kept in PauliString order.
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(std::size_t num_qubits) : n_(num_qubits) {}
    static PauliSum identity(std::size_t num_qubits, Complex coefficient = 1.0);

    std::size_t num_qubits() const noexcept { return n_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    const std::map<PauliString, Complex> &terms() const noexcept { return terms_; }

    void add(const PauliString &p, Complex c);
    /// Drops |c| < tol.
    void prune(double tol = kPauliPruneTolerance);
    /// max |Im c|.
    double max_imaginary() const;

    PauliSum &operator+=(const PauliSum &rhs);
    PauliSum &operator*=(Complex s);
    friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
    friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
    friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
    friend PauliSum operator*(const PauliSum &a, const PauliSum &b);

    /// Tensor product of sums on disjoint qubit sets (a on low qubits).
    friend PauliSum tensor(const PauliSum &a, const PauliSum &b);
    PauliSum placed(std::size_t total_qubits, std::size_t offset) const;

  private:
    std::size_t n_ = 0;
    std::map<PauliString, Complex> terms_;
};

/// Dense 2x2 matrix of one letter.
ComplexMatrix pauli_letter_matrix(char letter);

} // namespace vibronic

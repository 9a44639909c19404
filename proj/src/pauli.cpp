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

#include "vibronic/pauli.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

int letter_rank(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

} // namespace

PauliString::PauliString(std::size_t num_qubits)
    : n_(num_qubits), x_(words_for(num_qubits), 0), z_(words_for(num_qubits), 0) {}

PauliString PauliString::from_string(std::string_view letters) {
    PauliString p(letters.size());
    for (std::size_t q = 0; q < letters.size(); ++q)
        p.set(q, letters[q]);
    return p;
}

char PauliString::at(std::size_t q) const {
    if (q >= n_)
        throw InvalidArgument(fmt::format("qubit {} outside a {}-qubit string", q, n_));
    static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
    return letters[letter_rank(x_bit(q), z_bit(q))];
}

void PauliString::set(std::size_t q, char letter) {
    if (q >= n_)
        throw InvalidArgument(fmt::format("qubit {} outside a {}-qubit string", q, n_));
    bool x = false, z = false;
    switch (letter) {
    case 'I':
        break;
    case 'X':
        x = true;
        break;
    case 'Y':
        x = z = true;
        break;
    case 'Z':
        z = true;
        break;
    default:
        throw InvalidArgument(fmt::format("invalid Pauli letter '{}'", letter));
    }
    const std::uint64_t bit = std::uint64_t{1} << (q % 64);
    x_[q / 64] = x ? (x_[q / 64] | bit) : (x_[q / 64] & ~bit);
    z_[q / 64] = z ? (z_[q / 64] | bit) : (z_[q / 64] & ~bit);
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
        w += static_cast<std::size_t>(std::popcount(x_[i] | z_[i]));
    return w;
}

std::size_t PauliString::y_count() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
        w += static_cast<std::size_t>(std::popcount(x_[i] & z_[i]));
    return w;
}

std::vector<std::uint64_t> PauliString::support() const {
    std::vector<std::uint64_t> s(x_.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = x_[i] | z_[i];
    return s;
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (n_ != other.n_)
        throw DimensionError("Pauli strings of different length");
    std::size_t anti = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
        anti += static_cast<std::size_t>(std::popcount((x_[i] & other.z_[i]) ^ (z_[i] & other.x_[i])));
    return anti % 2 == 0;
}

std::string PauliString::to_string() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q)
        s[q] = at(q);
    return s;
}

bool PauliString::operator<(const PauliString &other) const {
    if (n_ != other.n_)
        return n_ < other.n_;
    for (std::size_t q = 0; q < n_; ++q) {
        const int a = letter_rank(x_bit(q), z_bit(q));
        const int b = letter_rank(other.x_bit(q), other.z_bit(q));
        if (a != b)
            return a < b;
    }
    return false;
}

std::pair<int, PauliString> multiply(const PauliString &a, const PauliString &b) {
    if (a.n_ != b.n_)
        throw DimensionError("Pauli strings of different length");
    PauliString r(a.n_);
    long long sign = 0;
    for (std::size_t i = 0; i < a.x_.size(); ++i) {
        r.x_[i] = a.x_[i] ^ b.x_[i];
        r.z_[i] = a.z_[i] ^ b.z_[i];
        sign += std::popcount(a.z_[i] & b.x_[i]);
    }
    // i^{a1} X^x1 Z^z1 i^{a2} X^x2 Z^z2 = i^{a1+a2} (-1)^{z1.x2} X^x3 Z^z3.
    const long long phase = static_cast<long long>(a.y_count() + b.y_count()) - static_cast<long long>(r.y_count()) +
                            2 * sign;
    return {static_cast<int>(((phase % 4) + 4) % 4), r};
}

PauliString PauliString::placed(std::size_t total_qubits, std::size_t offset) const {
    if (offset + n_ > total_qubits)
        throw DimensionError(fmt::format("cannot place {} qubits at offset {} in {}", n_, offset, total_qubits));
    PauliString out(total_qubits);
    for (std::size_t q = 0; q < n_; ++q) {
        if (x_bit(q))
            out.x_[(q + offset) / 64] |= std::uint64_t{1} << ((q + offset) % 64);
        if (z_bit(q))
            out.z_[(q + offset) / 64] |= std::uint64_t{1} << ((q + offset) % 64);
    }
    return out;
}

PauliString concat(const PauliString &a, const PauliString &b) {
    PauliString out = a.placed(a.n_ + b.n_, 0);
    const PauliString hi = b.placed(a.n_ + b.n_, a.n_);
    for (std::size_t i = 0; i < out.x_.size(); ++i) {
        out.x_[i] |= hi.x_[i];
        out.z_[i] |= hi.z_[i];
    }
    return out;
}

PauliSum PauliSum::identity(std::size_t num_qubits, Complex coefficient) {
    PauliSum s(num_qubits);
    s.add(PauliString(num_qubits), coefficient);
    return s;
}

void PauliSum::add(const PauliString &p, Complex c) {
    if (p.num_qubits() != n_)
        throw DimensionError(fmt::format("{}-qubit string added to a {}-qubit sum", p.num_qubits(), n_));
    if (c == Complex(0.0, 0.0))
        return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0, 0.0))
            terms_.erase(it);
    }
}

void PauliSum::prune(double tol) {
    std::erase_if(terms_, [tol](const auto &kv) { return std::abs(kv.second) < tol; });
}

double PauliSum::max_imaginary() const {
    double m = 0.0;
    for (const auto &[p, c] : terms_)
        m = std::max(m, std::abs(c.imag()));
    return m;
}

PauliSum &PauliSum::operator+=(const PauliSum &rhs) {
    if (rhs.n_ != n_)
        throw DimensionError("Pauli sums on different qubit counts");
    for (const auto &[p, c] : rhs.terms_)
        add(p, c);
    return *this;
}

PauliSum &PauliSum::operator*=(Complex s) {
    if (s == Complex(0.0, 0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto &[p, c] : terms_)
        c *= s;
    return *this;
}

PauliSum operator*(const PauliSum &a, const PauliSum &b) {
    if (a.n_ != b.n_)
        throw DimensionError("Pauli sums on different qubit counts");
    PauliSum out(a.n_);
    for (const auto &[pa, ca] : a.terms_)
        for (const auto &[pb, cb] : b.terms_) {
            auto [phase, p] = multiply(pa, pb);
            out.add(p, ca * cb * kIPow[phase]);
        }
    return out;
}

PauliSum tensor(const PauliSum &a, const PauliSum &b) {
    PauliSum out(a.n_ + b.n_);
    for (const auto &[pa, ca] : a.terms_)
        for (const auto &[pb, cb] : b.terms_)
            out.add(concat(pa, pb), ca * cb);
    return out;
}

PauliSum PauliSum::placed(std::size_t total_qubits, std::size_t offset) const {
    PauliSum out(total_qubits);
    for (const auto &[p, c] : terms_)
        out.add(p.placed(total_qubits, offset), c);
    return out;
}

ComplexMatrix pauli_letter_matrix(char letter) {
    ComplexMatrix m(2, 2);
    switch (letter) {
    case 'I':
        m << 1, 0, 0, 1;
        break;
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, Complex(0, -1), Complex(0, 1), 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        throw InvalidArgument(fmt::format("invalid Pauli letter '{}'", letter));
    }
    return m;
}

} // namespace vibronic

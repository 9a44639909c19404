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

#include "vibronic/encoding.hpp"

#include <bit>

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

std::string_view to_string(Encoding e) { return e == Encoding::Binary ? "binary" : "unary"; }

Encoding parse_encoding(std::string_view text) {
    if (text == "binary")
        return Encoding::Binary;
    if (text == "unary")
        return Encoding::Unary;
    throw InvalidArgument(fmt::format("unknown encoding '{}', expected binary or unary", text));
}

std::size_t qubits_for_mode(Encoding e, std::size_t max_level) {
    if (e == Encoding::Unary)
        return max_level + 1;
    if (max_level == 0)
        return 1;
    return static_cast<std::size_t>(std::bit_width(max_level));
}

std::string encode_level(std::size_t level, std::size_t max_level, Encoding e) {
    if (level > max_level)
        throw InvalidArgument(fmt::format("level {} exceeds cutoff {}", level, max_level));
    const std::size_t n = qubits_for_mode(e, max_level);
    std::string out(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
        const bool set = e == Encoding::Binary ? ((level >> q) & 1U) != 0 : q == level;
        if (set)
            out[n - 1 - q] = '1';
    }
    return out;
}

QubitLayout::QubitLayout(Encoding encoding, ModeCutoffs cutoffs) : encoding_(encoding), cutoffs_(std::move(cutoffs)) {
    for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
        const auto n = qubits_for_mode(encoding_, cutoffs_[k]);
        ranges_.push_back({total_, n});
        total_ += n;
    }
}

std::uint64_t QubitLayout::level_bits(std::size_t level, std::size_t mode) const {
    if (level > cutoffs_[mode])
        throw InvalidArgument(fmt::format("level {} exceeds cutoff {} on mode {}", level, cutoffs_[mode], mode));
    if (encoding_ == Encoding::Binary)
        return level;
    if (level >= 64)
        throw QubitBudgetError("unary codeword does not fit in 64 bits");
    return std::uint64_t{1} << level;
}

std::uint64_t QubitLayout::encode(std::span<const std::size_t> levels) const {
    if (levels.size() != num_modes())
        throw DimensionError(fmt::format("{} levels for a {}-mode layout", levels.size(), num_modes()));
    if (total_ > 64)
        throw QubitBudgetError(fmt::format("layout has {} qubits, basis indices need <= 64", total_));
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < levels.size(); ++k)
        bits |= level_bits(levels[k], k) << ranges_[k].offset;
    return bits;
}

std::optional<std::vector<std::size_t>> QubitLayout::decode(std::uint64_t bits) const {
    if (total_ > 64)
        throw QubitBudgetError(fmt::format("layout has {} qubits, basis indices need <= 64", total_));
    std::vector<std::size_t> levels(num_modes());
    for (std::size_t k = 0; k < num_modes(); ++k) {
        const auto &r = ranges_[k];
        const std::uint64_t mask = r.count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << r.count) - 1);
        const std::uint64_t local = (bits >> r.offset) & mask;
        if (encoding_ == Encoding::Binary) {
            if (local > cutoffs_[k])
                return std::nullopt;
            levels[k] = static_cast<std::size_t>(local);
        } else {
            if (std::popcount(local) != 1)
                return std::nullopt;
            levels[k] = static_cast<std::size_t>(std::countr_zero(local));
        }
    }
    return levels;
}

std::vector<std::uint64_t> QubitLayout::codewords() const {
    const FockSpace space(cutoffs_);
    std::vector<std::uint64_t> out(space.dimension());
    for (std::size_t flat = 0; flat < out.size(); ++flat)
        out[flat] = encode(space.multi_index(flat));
    return out;
}

} // namespace vibronic

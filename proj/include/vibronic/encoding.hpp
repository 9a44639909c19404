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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vibronic/fock.hpp"

namespace vibronic {

enum class Encoding { Binary, Unary };

std::string_view to_string(Encoding e);
Encoding parse_encoding(std::string_view text);

/// Binary: ceil(log2(L_max + 1)), at least 1. Unary: L_max + 1.
std::size_t qubits_for_mode(Encoding e, std::size_t max_level);

/// Codeword of one level, qubit 0 rightmost ("011" is level 3 in binary).
std::string encode_level(std::size_t level, std::size_t max_level, Encoding e);

struct QubitRange {
    std::size_t offset = 0;
    std::size_t count = 0;
};

/// Contiguous qubit ranges for the modes of one register, mode 0 lowest.
class QubitLayout {
  public:
    QubitLayout() = default;
    QubitLayout(Encoding encoding, ModeCutoffs cutoffs);

    Encoding encoding() const noexcept { return encoding_; }
    const ModeCutoffs &cutoffs() const noexcept { return cutoffs_; }
    std::size_t num_modes() const noexcept { return ranges_.size(); }
    const QubitRange &mode_range(std::size_t k) const { return ranges_.at(k); }
    std::size_t num_qubits() const noexcept { return total_; }

    /// Bits of a level on its own mode, relative to the mode's range.
    std::uint64_t level_bits(std::size_t level, std::size_t mode) const;
    /// Basis index over the layout qubits (qubit q is bit q). Needs <= 64 qubits.
    std::uint64_t encode(std::span<const std::size_t> levels) const;
    /// Inverse of encode; nullopt for states outside the code space.
    std::optional<std::vector<std::size_t>> decode(std::uint64_t bits) const;
    /// encode() of every FockSpace basis state, in flat-index order.
    std::vector<std::uint64_t> codewords() const;

  private:
    Encoding encoding_ = Encoding::Binary;
    ModeCutoffs cutoffs_;
    std::vector<QubitRange> ranges_;
    std::size_t total_ = 0;
};

} // namespace vibronic

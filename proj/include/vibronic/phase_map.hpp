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

#include "vibronic/fock.hpp"

namespace vibronic {

struct SpectralBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Gershgorin discs of a Hermitian operator.
SpectralBounds gershgorin_bounds(const ManyBodyOperator &h);

/// Affine energy <-> phase calibration of U = exp(-i tau (H + shift)).
/// An energy E is written to the register as phase tau (E + shift) / (2 pi).
struct PhaseMap {
    double tau = 1.0;          // cm
    double energy_shift = 0.0; // cm^-1
    std::size_t t = 0;         // E-register bits

    double resolution() const;
    double phase_of(double energy) const;
    /// Bin-center energy of register outcome j.
    double energy_of(std::uint64_t j) const;
};

inline constexpr double kDefaultPhaseMargin = 0.05;

/// shift = max(0, -lower), tau = 2 pi (1 - margin) / (upper + shift); a
/// zero-width range falls back to tau = 1.
PhaseMap choose_phase_map(const SpectralBounds &bounds, std::size_t t, double margin = kDefaultPhaseMargin);
/// Uses Gershgorin bounds; a PSD hint clamps the lower bound at 0.
PhaseMap choose_phase_map(const ManyBodyOperator &h, std::size_t t, double margin = kDefaultPhaseMargin,
                          bool positive_semidefinite = false);

} // namespace vibronic

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

#include "vibronic/phase_map.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

SpectralBounds gershgorin_bounds(const ManyBodyOperator &h) {
    const auto &m = h.matrix();
    const auto d = m.rows();
    std::vector<double> radius(static_cast<std::size_t>(d), 0.0), center(static_cast<std::size_t>(d), 0.0);
    for (Eigen::Index c = 0; c < m.outerSize(); ++c)
        for (SparseComplexMatrix::InnerIterator it(m, c); it; ++it) {
            const auto r = static_cast<std::size_t>(it.row());
            if (it.row() == it.col())
                center[r] += it.value().real();
            else
                radius[r] += std::abs(it.value());
        }
    SpectralBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < center.size(); ++i) {
        b.lower = std::min(b.lower, center[i] - radius[i]);
        b.upper = std::max(b.upper, center[i] + radius[i]);
    }
    if (center.empty())
        b = {0.0, 0.0};
    return b;
}

double PhaseMap::resolution() const {
    return 2.0 * std::numbers::pi / (tau * static_cast<double>(std::uint64_t{1} << t));
}

double PhaseMap::phase_of(double energy) const { return tau * (energy + energy_shift) / (2.0 * std::numbers::pi); }

double PhaseMap::energy_of(std::uint64_t j) const { return resolution() * static_cast<double>(j) - energy_shift; }

PhaseMap choose_phase_map(const SpectralBounds &bounds, std::size_t t, double margin) {
    if (t == 0 || t > 40)
        throw InvalidArgument(fmt::format("E-register size {} outside 1..40", t));
    if (!(margin >= 0.0 && margin < 1.0))
        throw InvalidArgument(fmt::format("phase margin {} outside [0, 1)", margin));
    PhaseMap pm;
    pm.t = t;
    pm.energy_shift = std::max(0.0, -bounds.lower);
    const double span = bounds.upper + pm.energy_shift;
    pm.tau = span > 0.0 ? 2.0 * std::numbers::pi * (1.0 - margin) / span : 1.0;
    return pm;
}

PhaseMap choose_phase_map(const ManyBodyOperator &h, std::size_t t, double margin, bool positive_semidefinite) {
    auto b = gershgorin_bounds(h);
    if (positive_semidefinite)
        b.lower = std::max(b.lower, 0.0);
    return choose_phase_map(b, t, margin);
}

} // namespace vibronic

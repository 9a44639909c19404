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
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vibronic/types.hpp"

namespace vibronic {

/// One higher-order potential term, coefficient * prod_i q_{B,modes[i]}.
/// Mode indices are 0-based; the file format stores them 1-based.
struct AnharmonicTerm {
    std::vector<std::size_t> modes;
    double coefficient = 0.0; // cm^-1
};

/**
 * Inverse temperature in (cm^-1)^-1. The default-constructed value is the
 * zero-temperature sentinel (beta = +inf).
 */
class ThermalConfig {
  public:
    ThermalConfig() = default;

    static ThermalConfig zero_temperature() { return {}; }
    static ThermalConfig from_beta(double beta_inv_cm);
    static ThermalConfig from_temperature(double kelvin);

    bool is_zero_temperature() const noexcept { return zero_; }
    /// +inf for the zero-temperature sentinel.
    double beta() const noexcept { return zero_ ? std::numeric_limits<double>::infinity() : beta_; }
    /// Temperature in K, 0 for the sentinel.
    double temperature() const noexcept { return zero_ ? 0.0 : 1.0 / (kBoltzmannInvCmPerKelvin * beta_); }

  private:
    bool zero_ = true;
    double beta_ = 0.0;
};

/// Per-mode maximum occupation; the local dimension of mode k is max_levels[k] + 1.
struct ModeCutoffs {
    std::vector<std::size_t> max_levels;

    static ModeCutoffs uniform(std::size_t modes, std::size_t level) {
        return {std::vector<std::size_t>(modes, level)};
    }
    std::size_t size() const noexcept { return max_levels.size(); }
    std::size_t operator[](std::size_t k) const { return max_levels.at(k); }
    std::vector<std::size_t> local_dims() const;
};

/// Data for one electronic transition in the Duschinsky picture.
struct VibronicProblem {
    std::string label;
    RealVector omega_a;      ///< initial-surface frequencies, cm^-1
    RealVector omega_b;      ///< final-surface frequencies, cm^-1
    RealMatrix duschinsky;   ///< S, dimensionless, orthogonal up to data rounding
    RealVector delta;        ///< dimensionless displacement of the final-surface coordinates
    std::vector<AnharmonicTerm> anharmonic;
    std::optional<ThermalConfig> thermal;

    std::size_t num_modes() const noexcept { return static_cast<std::size_t>(omega_a.size()); }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    double orthogonality_deviation = 0.0; ///< max |S^T S - I|

    /// Violations joined into one message.
    std::string summary() const;
};

inline constexpr double kOrthogonalityTolerance = 1e-3;
inline constexpr double kOrthogonalityWarning = 1e-6;

ValidationReport validate(const VibronicProblem &problem,
                          double orthogonality_tolerance = kOrthogonalityTolerance);

/// Parses the JSON problem format. Throws ParseError on malformed input and
/// ValidationError when the parsed problem violates an invariant.
VibronicProblem parse_problem(std::string_view text);
VibronicProblem load_problem(const std::filesystem::path &path);
std::string serialize_problem(const VibronicProblem &problem);

/// J = diag(sqrt(omega_B)) S diag(1/sqrt(omega_A)).
RealMatrix duschinsky_j(const VibronicProblem &problem);
/// (J^T)^{-1}, used for p_B and in the ladder transform. Equal to
/// diag(1/sqrt(omega_B)) S diag(sqrt(omega_A)) when S is exactly orthogonal.
RealMatrix duschinsky_j_inverse_transpose(const VibronicProblem &problem);

/// E_A(n) = sum_k omega_A[k] (n_k + 1/2).
double initial_state_energy(const VibronicProblem &problem, const std::vector<std::size_t> &levels);

} // namespace vibronic

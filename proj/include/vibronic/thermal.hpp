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

#include "vibronic/encoding.hpp"
#include "vibronic/problem.hpp"
#include "vibronic/qpe.hpp"
#include "vibronic/statevector.hpp"

namespace vibronic {

/// Squeezing angle with tanh(theta / 2) = exp(-beta omega / 2); 0 at zero temperature.
double thermal_angle(double omega, const ThermalConfig &thermal);

/// exp(theta/2 (a_I^dag a_S^dag - a_I a_S)) |0>_I |0>_S on one truncated mode
/// pair, renormalized. Entry (n, m) is the amplitude of |n>_I |m>_S.
ComplexMatrix thermal_pair_amplitudes(double omega, const ThermalConfig &thermal, std::size_t max_level);

/// Product of the per-mode pair states over S (low qubits) and I (next
/// N_S qubits), both encoded with the S layout. Uses omega_A.
StateVector prepare_thermal(const VibronicProblem &problem, const ThermalConfig &thermal, const QubitLayout &layout);

/// Finite-temperature sampling: measures I and E, records eps_j - E_A(n_I).
/// I outcomes outside the code space are discarded and counted.
SampledSpectrum run_qpe_thermal(const VibronicProblem &problem, const ModeCutoffs &cutoffs, Encoding encoding,
                                const QpeOptions &options, const ThermalConfig &thermal,
                                BuildRoute route = BuildRoute::QP);

} // namespace vibronic

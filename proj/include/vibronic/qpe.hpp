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
#include <vector>

#include "vibronic/encoding.hpp"
#include "vibronic/hamiltonian.hpp"
#include "vibronic/linalg.hpp"
#include "vibronic/phase_map.hpp"
#include "vibronic/spectrum.hpp"
#include "vibronic/statevector.hpp"
#include "vibronic/trotter.hpp"

namespace vibronic {

inline constexpr std::size_t kDefaultQubitCap = 26;

/// Register layout: S on the lowest qubits, then I (thermal runs only), then E.
struct RegisterLayout {
    std::size_t s_qubits = 0;
    std::size_t i_qubits = 0;
    std::size_t e_qubits = 0;

    std::size_t i_offset() const noexcept { return s_qubits; }
    std::size_t e_offset() const noexcept { return s_qubits + i_qubits; }
    std::size_t total() const noexcept { return s_qubits + i_qubits + e_qubits; }
};

struct QpeOptions {
    std::size_t t = 12;
    std::size_t shots = 1000;
    std::uint64_t seed = 0;
    EvolutionBackend backend = EvolutionBackend::exact();
    std::size_t qubit_cap = kDefaultQubitCap;
    std::size_t jobs = 1;
    double phase_margin = kDefaultPhaseMargin;
    /// Overrides choose_phase_map when set.
    std::optional<PhaseMap> phase_map;
    /// S-register initial state over FockSpace flat indices; vacuum when unset.
    std::optional<ComplexVector> initial_state;
};

struct ShotRecord {
    std::uint64_t j = 0;                   ///< decoded E-register value, phase ~ j / 2^t
    std::vector<std::size_t> initial_levels; ///< decoded I register (thermal runs)
};

struct SampledSpectrum {
    PhaseMap phase_map;
    Encoding encoding = Encoding::Binary;
    EvolutionBackend backend;
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    std::size_t discarded = 0;
    RegisterLayout registers;
    std::vector<ShotRecord> records; ///< shot order; discarded shots are absent
    std::vector<double> record_energies; ///< eps_j, minus E_A(n_I) when thermal
    /// S-register amplitudes after the last accepted shot's measurement.
    ComplexVector post_measurement_state;

    /// One stick per distinct energy, intensity count / accepted shots.
    StickSpectrum as_sticks() const;
    BinnedSpectrum histogram(double width, double origin = kDefaultBinOrigin) const;
};

/// Pre-measurement state of the QPE circuit. `initial` spans S (and I) qubits.
StateVector qpe_final_state(const ManyBodyOperator &h, const QubitLayout &s_layout, const PhaseMap &phase_map,
                            const EvolutionBackend &backend, const StateVector &initial, std::size_t i_qubits);

SampledSpectrum run_qpe(const ManyBodyOperator &h, const QubitLayout &s_layout, const QpeOptions &options,
                        bool positive_semidefinite = false);
SampledSpectrum run_qpe(const VibronicProblem &problem, const ModeCutoffs &cutoffs, Encoding encoding,
                        const QpeOptions &options, BuildRoute route = BuildRoute::QP);

/// |K_t(x)|^2 = sin^2(pi N x) / (N^2 sin^2(pi x)), N = 2^t.
double qpe_kernel(double x, std::size_t t);

/// Exact P(j) for the ideal circuit from the eigendecomposition of H.
std::vector<double> outcome_distribution(const Eigensystem &eig, const PhaseMap &phase_map,
                                         const ComplexVector &initial_state);
std::vector<double> outcome_distribution(const ManyBodyOperator &h, const PhaseMap &phase_map,
                                         const ComplexVector &initial_state);

/// Counter-based uniform draw in [0, 1) for (seed, shot).
double shot_uniform(std::uint64_t seed, std::uint64_t shot);

/// Samples outcomes from a probability vector, one draw per shot index.
std::vector<std::size_t> sample_indices(const std::vector<double> &probabilities, std::uint64_t seed,
                                        std::size_t shots, std::size_t jobs = 1);

/// S-register state over FockSpace flat indices embedded at the codewords.
StateVector embed_register_state(const ComplexVector &fock_amplitudes, const QubitLayout &layout,
                                 std::size_t extra_qubits = 0);

} // namespace vibronic

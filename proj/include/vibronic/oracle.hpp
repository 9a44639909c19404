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
#include <optional>
#include <string>
#include <vector>

#include "vibronic/hamiltonian.hpp"
#include "vibronic/linalg.hpp"
#include "vibronic/spectrum.hpp"

namespace vibronic {

/// Sticks (eigenvalue, |<0|psi_i>|^2) of a Hermitian H, ascending in energy.
StickSpectrum diagonalize_fcp(const ManyBodyOperator &h, SpectrumMetadata metadata = {});
/// Same quantities read off a full eigendecomposition.
StickSpectrum fcp_from_eigensystem(const Eigensystem &eig, std::size_t basis_index = 0,
                                   SpectrumMetadata metadata = {});

/// Build by the given route (plus anharmonic terms) and diagonalize.
StickSpectrum exact_fcp(const VibronicProblem &problem, const ModeCutoffs &cutoffs,
                        BuildRoute route = BuildRoute::QP);

/// Thermal FCP: sticks at eps_i - E_A(n) with weight p_n |<n|psi_i>|^2, p_n
/// renormalized over the truncated space. Initial levels whose population
/// falls below min_population are skipped.
StickSpectrum thermal_fcp_oracle(const VibronicProblem &problem, const ModeCutoffs &cutoffs,
                                 const ThermalConfig &thermal, BuildRoute route = BuildRoute::QP,
                                 double min_population = 1e-14);

/// Normalized Boltzmann weights p_n over the truncated product space, indexed
/// by flat FockSpace index.
RealVector boltzmann_populations(const VibronicProblem &problem, const FockSpace &space, const ThermalConfig &thermal);

/// FCF summed per final-surface occupation of one mode. Each eigenstate is
/// assigned the level round(<psi|N_B,mode|psi>).
std::vector<double> level_resolved_fcf(const VibronicProblem &problem, const ModeCutoffs &cutoffs, std::size_t mode,
                                       BuildRoute route = BuildRoute::QP);

struct SweepOptions {
    BuildRoute route = BuildRoute::QP;
    double threshold = 1e-4;
    double sigma = kDefaultSigma;
    BroadeningConvention convention = BroadeningConvention::StdDev;
    std::size_t start_level = 1;
    std::size_t max_level = 200;
    std::size_t jobs = 1;
    /// When set, every step also records L1 against this spectrum.
    std::optional<BroadenedSpectrum> reference;
};

struct SweepStep {
    std::size_t level = 0;
    double l1_previous = 0.0; ///< NaN on the first step
    double l1_reference = 0.0; ///< NaN without a reference
    double leakage = 0.0;
};

struct SweepResult {
    bool converged = false;
    std::size_t converged_level = 0;
    std::vector<SweepStep> trace;
    /// Steps where the successive L1 grew; reported, not hidden.
    std::vector<std::string> warnings;
};

/// Varies one mode's cutoff from start_level upward until the L1 between
/// successive broadened spectra drops below the threshold. The converged
/// level is the lower of that pair. The varied entry of fixed_cutoffs is ignored.
SweepResult converge_sweep(const VibronicProblem &problem, std::size_t varied_mode, const ModeCutoffs &fixed_cutoffs,
                           const SweepOptions &options = {});

/// Auxiliary sweeps for the non-varied modes: each is swept alone with every
/// other mode held at `held_level`. Returns the converged cutoffs with the
/// varied mode set to held_level.
ModeCutoffs auxiliary_fixed_cutoffs(const VibronicProblem &problem, std::size_t varied_mode, std::size_t held_level,
                                    const SweepOptions &options = {});

} // namespace vibronic

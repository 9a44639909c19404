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
#include <string>
#include <vector>

#include "vibronic/hamiltonian.hpp"
#include "vibronic/spectrum.hpp"

namespace vibronic {

/// One molecule of the truncation study: an under-truncated run against a
/// converged reference, both with the non-varied mode at its converged cutoff.
struct TruncationCase {
    std::string file;        ///< problem file name inside the data directory
    std::size_t varied_mode; ///< 0-based
    ModeCutoffs approximate;
    ModeCutoffs reference;
    double target_l1;
};

/// The four harmonic molecules with their target under-truncated L1.
std::vector<TruncationCase> truncation_cases();

struct TruncationRow {
    std::string label;
    TruncationCase config;
    double l1 = 0.0;
    double approximate_leakage = 0.0;
    double reference_leakage = 0.0;
    StickSpectrum approximate;
    StickSpectrum reference;
};

struct ReproOptions {
    std::filesystem::path data_dir;
    BuildRoute route = BuildRoute::Ladder;
    double sigma = kDefaultSigma;
    BroadeningConvention convention = BroadeningConvention::StdDev;
    std::size_t jobs = 1;
};

std::vector<TruncationRow> run_truncation_study(const ReproOptions &options);
TruncationRow run_truncation_case(const TruncationCase &c, const ReproOptions &options);

struct AnharmonicStep {
    ModeCutoffs cutoffs;
    double l1_previous = 0.0; ///< NaN on the first step
    double hermiticity_deviation = 0.0;
    double leakage = 0.0;
};

struct AnharmonicStudy {
    std::vector<AnharmonicStep> ladder;
    double harmonic_l1 = 0.0; ///< harmonic vs anharmonic at the last cutoffs
    StickSpectrum anharmonic;
    StickSpectrum harmonic;
};

/// Cutoff ladder for the three-mode anharmonic SO2 problem.
std::vector<ModeCutoffs> anharmonic_ladder();
AnharmonicStudy run_anharmonic_study(const ReproOptions &options);

} // namespace vibronic

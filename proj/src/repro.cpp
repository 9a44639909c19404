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

#include "vibronic/repro.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "vibronic/oracle.hpp"
#include "vibronic/problem.hpp"

namespace vibronic {

std::vector<TruncationCase> truncation_cases() {
    // Published cutoffs count levels; the highest kept level is one less.
    return {
        {"so2.json", 0, {{9, 8}}, {{30, 30}}, 0.208},
        {"h2o.json", 1, {{23, 44}}, {{23, 70}}, 0.231},
        {"d2o.json", 1, {{28, 56}}, {{28, 90}}, 0.228},
        {"no2.json", 1, {{43, 60}}, {{43, 90}}, 0.241},
    };
}

TruncationRow run_truncation_case(const TruncationCase &c, const ReproOptions &options) {
    const auto problem = load_problem(options.data_dir / c.file);
    TruncationRow row;
    row.label = problem.label;
    row.config = c;
    auto approx = std::async(std::launch::async, [&] { return exact_fcp(problem, c.approximate, options.route); });
    row.reference = exact_fcp(problem, c.reference, options.route);
    row.approximate = approx.get();
    row.approximate_leakage = row.approximate.leakage();
    row.reference_leakage = row.reference.leakage();
    row.l1 = l1_distance(broadened_fcp(row.approximate, options.sigma, options.convention),
                         broadened_fcp(row.reference, options.sigma, options.convention));
    return row;
}

std::vector<TruncationRow> run_truncation_study(const ReproOptions &options) {
    std::vector<TruncationRow> rows;
    for (const auto &c : truncation_cases())
        rows.push_back(run_truncation_case(c, options));
    return rows;
}

std::vector<ModeCutoffs> anharmonic_ladder() {
    return {{{8, 5, 4}}, {{10, 6, 5}}, {{12, 7, 6}}, {{14, 8, 7}}, {{16, 9, 8}}};
}

AnharmonicStudy run_anharmonic_study(const ReproOptions &options) {
    const auto problem = load_problem(options.data_dir / "so2_anharmonic.json");
    AnharmonicStudy study;
    BroadenedSpectrum previous;
    bool first = true;
    for (const auto &cutoffs : anharmonic_ladder()) {
        const auto report = build_hamiltonian(problem, cutoffs, options.route);
        auto sticks = diagonalize_fcp(report.hamiltonian, {problem.label, cutoffs.max_levels,
                                                           std::string(to_string(options.route))});
        const auto broadened = broadened_fcp(sticks, options.sigma, options.convention);
        AnharmonicStep step;
        step.cutoffs = cutoffs;
        step.hermiticity_deviation = report.hermiticity_deviation;
        step.leakage = sticks.leakage();
        step.l1_previous = first ? std::numeric_limits<double>::quiet_NaN() : l1_distance(broadened, previous);
        study.ladder.push_back(step);
        previous = broadened;
        study.anharmonic = std::move(sticks);
        first = false;
    }
    auto harmonic_problem = problem;
    harmonic_problem.anharmonic.clear();
    harmonic_problem.label += "-harmonic";
    study.harmonic = exact_fcp(harmonic_problem, study.ladder.back().cutoffs, options.route);
    study.harmonic_l1 = l1_distance(previous, broadened_fcp(study.harmonic, options.sigma, options.convention));
    return study;
}

} // namespace vibronic

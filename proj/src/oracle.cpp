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

#include "vibronic/oracle.hpp"

#include <cmath>
#include <future>
#include <limits>

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

namespace {

SpectrumMetadata metadata_for(const VibronicProblem &problem, const ModeCutoffs &cutoffs, BuildRoute route) {
    return {problem.label, cutoffs.max_levels, std::string(to_string(route))};
}

} // namespace

StickSpectrum diagonalize_fcp(const ManyBodyOperator &h, SpectrumMetadata metadata) {
    const auto weights = spectral_weights(h, 0);
    StickSpectrum out;
    out.metadata = std::move(metadata);
    out.sticks.reserve(static_cast<std::size_t>(weights.values.size()));
    for (Eigen::Index i = 0; i < weights.values.size(); ++i)
        out.sticks.push_back({weights.values[i], weights.weights[i]});
    return out;
}

StickSpectrum fcp_from_eigensystem(const Eigensystem &eig, std::size_t basis_index, SpectrumMetadata metadata) {
    StickSpectrum out;
    out.metadata = std::move(metadata);
    const auto row = static_cast<Eigen::Index>(basis_index);
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        out.sticks.push_back({eig.values[i], std::norm(eig.vectors(row, i))});
    return out;
}

StickSpectrum exact_fcp(const VibronicProblem &problem, const ModeCutoffs &cutoffs, BuildRoute route) {
    const auto report = build_hamiltonian(problem, cutoffs, route);
    return diagonalize_fcp(report.hamiltonian, metadata_for(problem, cutoffs, route));
}

RealVector boltzmann_populations(const VibronicProblem &problem, const FockSpace &space, const ThermalConfig &thermal) {
    const auto d = static_cast<Eigen::Index>(space.dimension());
    RealVector p = RealVector::Zero(d);
    if (thermal.is_zero_temperature()) {
        p[0] = 1.0;
        return p;
    }
    const double beta = thermal.beta();
    for (Eigen::Index flat = 0; flat < d; ++flat) {
        double w = 1.0;
        for (std::size_t k = 0; k < space.num_modes(); ++k) {
            const double x = beta * problem.omega_a[static_cast<Eigen::Index>(k)];
            const auto n = static_cast<double>(space.level(static_cast<std::size_t>(flat), k));
            w *= -std::expm1(-x) * std::exp(-x * n);
        }
        p[flat] = w;
    }
    return p / p.sum();
}

StickSpectrum thermal_fcp_oracle(const VibronicProblem &problem, const ModeCutoffs &cutoffs,
                                 const ThermalConfig &thermal, BuildRoute route, double min_population) {
    const auto report = build_hamiltonian(problem, cutoffs, route);
    const auto &space = report.space;
    const RealVector p = boltzmann_populations(problem, space, thermal);
    StickSpectrum out;
    out.metadata = metadata_for(problem, cutoffs, route);

    if (thermal.is_zero_temperature()) {
        out = diagonalize_fcp(report.hamiltonian, out.metadata);
        const double e0 = initial_state_energy(problem, std::vector<std::size_t>(problem.num_modes(), 0));
        for (auto &s : out.sticks)
            s.energy -= e0;
        return out;
    }

    const auto eig = hermitian_eigensystem(report.hamiltonian);
    for (std::size_t flat = 0; flat < space.dimension(); ++flat) {
        const double pn = p[static_cast<Eigen::Index>(flat)];
        if (pn < min_population)
            continue;
        const double ea = initial_state_energy(problem, space.multi_index(flat));
        for (Eigen::Index i = 0; i < eig.values.size(); ++i)
            out.sticks.push_back({eig.values[i] - ea, pn * std::norm(eig.vectors(static_cast<Eigen::Index>(flat), i))});
    }
    out.sort_by_energy();
    return out;
}

std::vector<double> level_resolved_fcf(const VibronicProblem &problem, const ModeCutoffs &cutoffs, std::size_t mode,
                                       BuildRoute route) {
    const auto report = build_hamiltonian(problem, cutoffs, route);
    const auto eig = hermitian_eigensystem(report.hamiltonian);
    const ComplexMatrix n = final_number_operator(problem, report.space, mode).to_dense();
    const ComplexMatrix nv = n * eig.vectors;
    std::vector<double> out;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double occ = eig.vectors.col(i).dot(nv.col(i)).real();
        const auto level = static_cast<std::size_t>(std::max(0.0, std::round(occ)));
        if (level >= out.size())
            out.resize(level + 1, 0.0);
        out[level] += std::norm(eig.vectors(0, i));
    }
    return out;
}

namespace {

struct SweepPoint {
    BroadenedSpectrum spectrum;
    double leakage = 0.0;
};

SweepPoint sweep_point(const VibronicProblem &problem, ModeCutoffs cutoffs, const SweepOptions &options) {
    const auto sticks = exact_fcp(problem, cutoffs, options.route);
    return {broadened_fcp(sticks, options.sigma, options.convention), sticks.leakage()};
}

} // namespace

SweepResult converge_sweep(const VibronicProblem &problem, std::size_t varied_mode, const ModeCutoffs &fixed_cutoffs,
                           const SweepOptions &options) {
    if (varied_mode >= problem.num_modes())
        throw InvalidArgument(fmt::format("varied mode {} (1-based) outside a {}-mode problem", varied_mode + 1,
                                          problem.num_modes()));
    if (fixed_cutoffs.size() != problem.num_modes())
        throw DimensionError(fmt::format("{} cutoffs given for {} modes", fixed_cutoffs.size(), problem.num_modes()));
    if (!(options.threshold > 0.0))
        throw InvalidArgument("sweep threshold must be positive");
    const std::size_t start = std::max<std::size_t>(1, options.start_level);
    const std::size_t jobs = std::max<std::size_t>(1, options.jobs);

    SweepResult result;
    std::optional<BroadenedSpectrum> previous;
    double previous_step = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t batch = start; batch <= options.max_level; batch += jobs) {
        const std::size_t last = std::min(options.max_level, batch + jobs - 1);
        std::vector<std::future<SweepPoint>> pending;
        for (std::size_t level = batch; level <= last; ++level) {
            ModeCutoffs c = fixed_cutoffs;
            c.max_levels[varied_mode] = level;
            pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                         [&problem, c, &options] { return sweep_point(problem, c, options); }));
        }
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const std::size_t level = batch + i;
            auto point = pending[i].get();
            SweepStep step{level, nan, nan, point.leakage};
            if (options.reference)
                step.l1_reference = l1_distance(point.spectrum, *options.reference);
            if (previous) {
                step.l1_previous = l1_distance(point.spectrum, *previous);
                if (step.l1_previous > previous_step * (1.0 + 1e-9) + 1e-12)
                    result.warnings.push_back(fmt::format("successive L1 grew from {:.3e} to {:.3e} at level {}",
                                                          previous_step, step.l1_previous, level));
                previous_step = step.l1_previous;
            }
            result.trace.push_back(step);
            previous = std::move(point.spectrum);
            if (!std::isnan(step.l1_previous) && step.l1_previous < options.threshold) {
                result.converged = true;
                result.converged_level = level - 1;
                return result;
            }
        }
    }
    result.warnings.push_back(fmt::format("no convergence below {:.1e} up to level {}", options.threshold,
                                          options.max_level));
    return result;
}

ModeCutoffs auxiliary_fixed_cutoffs(const VibronicProblem &problem, std::size_t varied_mode, std::size_t held_level,
                                    const SweepOptions &options) {
    const auto m = problem.num_modes();
    ModeCutoffs out = ModeCutoffs::uniform(m, held_level);
    for (std::size_t k = 0; k < m; ++k) {
        if (k == varied_mode)
            continue;
        const auto sweep = converge_sweep(problem, k, ModeCutoffs::uniform(m, held_level), options);
        if (!sweep.converged)
            throw NumericalError(fmt::format("auxiliary sweep on mode {} did not converge", k + 1));
        out.max_levels[k] = sweep.converged_level;
    }
    return out;
}

} // namespace vibronic

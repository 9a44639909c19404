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

#include "vibronic/thermal.hpp"

#include <cmath>
#include <optional>

#include <unsupported/Eigen/KroneckerProduct>

#include <fmt/format.h>

#include "vibronic/error.hpp"
#include "vibronic/linalg.hpp"

namespace vibronic {

double thermal_angle(double omega, const ThermalConfig &thermal) {
    if (thermal.is_zero_temperature())
        return 0.0;
    if (!(thermal.beta() > 0.0))
        throw InvalidArgument("beta must be positive");
    return 2.0 * std::atanh(std::exp(-0.5 * thermal.beta() * omega));
}

ComplexMatrix thermal_pair_amplitudes(double omega, const ThermalConfig &thermal, std::size_t max_level) {
    const auto d = static_cast<Eigen::Index>(max_level + 1);
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    const double theta = thermal_angle(omega, thermal);
    if (theta == 0.0) {
        out(0, 0) = 1.0;
        return out;
    }
    // Generator on |n>_I |m>_S with flat index n * d + m.
    const RealMatrix adag = creation(max_level).matrix.real();
    const RealMatrix pair = Eigen::kroneckerProduct(adag, adag);
    const RealMatrix g = 0.5 * theta * (pair - pair.transpose());
    // iG is Hermitian, so exp(G) = V exp(-i lambda) V^dag.
    const ComplexMatrix ig = Complex(0.0, 1.0) * g.cast<Complex>();
    const auto eig = hermitian_eigensystem(ig);
    ComplexVector phases(eig.values.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases[i] = std::polar(1.0, -eig.values[i]);
    const ComplexVector psi = eig.vectors * phases.asDiagonal() * eig.vectors.row(0).adjoint();
    const double norm = psi.norm();
    for (Eigen::Index n = 0; n < d; ++n)
        for (Eigen::Index m = 0; m < d; ++m)
            out(n, m) = psi[n * d + m] / norm;
    return out;
}

StateVector prepare_thermal(const VibronicProblem &problem, const ThermalConfig &thermal, const QubitLayout &layout) {
    const auto &cutoffs = layout.cutoffs();
    if (cutoffs.size() != problem.num_modes())
        throw DimensionError(fmt::format("layout has {} modes, problem has {}", cutoffs.size(), problem.num_modes()));
    std::vector<ComplexMatrix> pairs;
    for (std::size_t k = 0; k < cutoffs.size(); ++k)
        pairs.push_back(thermal_pair_amplitudes(problem.omega_a[static_cast<Eigen::Index>(k)], thermal, cutoffs[k]));

    const FockSpace space(cutoffs);
    const auto codes = layout.codewords();
    const std::size_t ns = layout.num_qubits();
    StateVector state(2 * ns);
    state[0] = 0.0;
    for (std::size_t ni = 0; ni < space.dimension(); ++ni) {
        for (std::size_t ms = 0; ms < space.dimension(); ++ms) {
            Complex amp = 1.0;
            for (std::size_t k = 0; k < cutoffs.size() && amp != 0.0; ++k)
                amp *= pairs[k](static_cast<Eigen::Index>(space.level(ni, k)),
                                static_cast<Eigen::Index>(space.level(ms, k)));
            if (amp != 0.0)
                state[codes[ms] | (codes[ni] << ns)] = amp;
        }
    }
    state.normalize();
    return state;
}

SampledSpectrum run_qpe_thermal(const VibronicProblem &problem, const ModeCutoffs &cutoffs, Encoding encoding,
                                const QpeOptions &options, const ThermalConfig &thermal, BuildRoute route) {
    const QubitLayout layout(encoding, cutoffs);
    const std::size_t ns = layout.num_qubits();
    const std::size_t total = 2 * ns + options.t;
    if (total > options.qubit_cap)
        throw QubitBudgetError(fmt::format("thermal QPE needs {} qubits ({} system + {} initial-copy + {} phase), cap is {}",
                                           total, ns, ns, options.t, options.qubit_cap));
    if (options.shots == 0)
        throw InvalidArgument("shots must be positive");
    const auto report = build_hamiltonian(problem, cutoffs, route);
    const PhaseMap pm = options.phase_map ? *options.phase_map
                                          : choose_phase_map(report.hamiltonian, options.t, options.phase_margin,
                                                             report.positive_semidefinite);
    if (pm.t != options.t)
        throw InvalidArgument("phase map and options disagree on t");

    const auto final =
        qpe_final_state(report.hamiltonian, layout, pm, options.backend, prepare_thermal(problem, thermal, layout), ns);

    const RegisterLayout regs{ns, ns, options.t};
    const std::size_t upper = std::size_t{1} << (ns + options.t);
    const std::size_t s_dim = std::size_t{1} << ns;
    std::vector<double> marginal(upper, 0.0);
    const auto probs = final.probabilities();
    for (std::size_t u = 0; u < upper; ++u)
        for (std::size_t s = 0; s < s_dim; ++s)
            marginal[u] += probs[(u << ns) | s];

    SampledSpectrum out;
    out.phase_map = pm;
    out.encoding = encoding;
    out.backend = options.backend;
    out.seed = options.seed;
    out.shots = options.shots;
    out.registers = regs;
    const std::size_t n = std::size_t{1} << options.t;
    const auto draws = sample_indices(marginal, options.seed, options.shots, options.jobs);
    std::optional<std::size_t> last_accepted;
    for (auto u : draws) {
        const auto initial = layout.decode(u & (s_dim - 1));
        if (!initial) {
            ++out.discarded;
            continue;
        }
        const std::uint64_t m = u >> ns;
        const std::uint64_t j = (n - m) % n;
        out.record_energies.push_back(pm.energy_of(j) - initial_state_energy(problem, *initial));
        out.records.push_back({j, *initial});
        last_accepted = u;
    }
    if (last_accepted) {
        out.post_measurement_state.resize(static_cast<Eigen::Index>(s_dim));
        for (std::size_t s = 0; s < s_dim; ++s)
            out.post_measurement_state[static_cast<Eigen::Index>(s)] = final[(*last_accepted << ns) | s];
        out.post_measurement_state.normalize();
    }
    return out;
}

} // namespace vibronic

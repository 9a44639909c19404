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

#include "vibronic/qpe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "parallel.hpp"
#include "vibronic/error.hpp"
#include "vibronic/kernels/kernels.hpp"
#include "vibronic/qubit_mapper.hpp"

namespace vibronic {

StickSpectrum SampledSpectrum::as_sticks() const {
    std::map<double, std::size_t> counts;
    for (double e : record_energies)
        ++counts[e];
    StickSpectrum out;
    const double n = static_cast<double>(record_energies.size());
    for (const auto &[e, c] : counts)
        out.sticks.push_back({e, static_cast<double>(c) / n});
    return out;
}

BinnedSpectrum SampledSpectrum::histogram(double width, double origin) const {
    return bin(as_sticks(), width, origin);
}

double qpe_kernel(double x, std::size_t t) {
    const double n = std::ldexp(1.0, static_cast<int>(t));
    const double r = x - std::round(x);
    if (std::abs(r) < 1e-15)
        return 1.0;
    const double num = std::sin(std::numbers::pi * n * r);
    const double den = n * std::sin(std::numbers::pi * r);
    return (num * num) / (den * den);
}

std::vector<double> outcome_distribution(const Eigensystem &eig, const PhaseMap &phase_map,
                                         const ComplexVector &initial_state) {
    if (initial_state.size() != eig.values.size())
        throw DimensionError("initial state and Hamiltonian dimensions differ");
    const ComplexVector c = eig.vectors.adjoint() * initial_state.normalized();
    const std::size_t n = std::size_t{1} << phase_map.t;
    std::vector<double> p(n, 0.0);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double w = std::norm(c[i]);
        if (w == 0.0)
            continue;
        const double phi = phase_map.phase_of(eig.values[i]);
        for (std::size_t j = 0; j < n; ++j)
            p[j] += w * qpe_kernel(phi - static_cast<double>(j) / static_cast<double>(n), phase_map.t);
    }
    return p;
}

std::vector<double> outcome_distribution(const ManyBodyOperator &h, const PhaseMap &phase_map,
                                         const ComplexVector &initial_state) {
    return outcome_distribution(hermitian_eigensystem(h), phase_map, initial_state);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

double shot_uniform(std::uint64_t seed, std::uint64_t shot) {
    const std::uint64_t h = splitmix64(splitmix64(seed) ^ (shot * 0xD1B54A32D192ED03ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> sample_indices(const std::vector<double> &probabilities, std::uint64_t seed,
                                        std::size_t shots, std::size_t jobs) {
    if (probabilities.empty())
        throw InvalidArgument("cannot sample from an empty distribution");
    std::vector<double> cdf(probabilities.size());
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] < 0.0)
            throw InvalidArgument("negative probability");
        acc += probabilities[i];
        cdf[i] = acc;
        if (probabilities[i] > 0.0)
            last_nonzero = i;
    }
    if (!(acc > 0.0))
        throw InvalidArgument("distribution has no weight");
    std::vector<std::size_t> out(shots);
    detail::parallel_chunks(shots, jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const double u = shot_uniform(seed, s) * acc;
            auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            out[s] = std::min(idx, last_nonzero);
        }
    });
    return out;
}

StateVector embed_register_state(const ComplexVector &fock_amplitudes, const QubitLayout &layout,
                                 std::size_t extra_qubits) {
    const auto codes = layout.codewords();
    if (static_cast<std::size_t>(fock_amplitudes.size()) != codes.size())
        throw DimensionError(fmt::format("state has {} amplitudes, space has {}", fock_amplitudes.size(), codes.size()));
    StateVector s(layout.num_qubits() + extra_qubits);
    s[0] = 0.0;
    for (std::size_t d = 0; d < codes.size(); ++d)
        s[codes[d]] = fock_amplitudes[static_cast<Eigen::Index>(d)];
    s.normalize();
    return s;
}

StateVector qpe_final_state(const ManyBodyOperator &h, const QubitLayout &s_layout, const PhaseMap &phase_map,
                            const EvolutionBackend &backend, const StateVector &initial, std::size_t i_qubits) {
    const RegisterLayout regs{s_layout.num_qubits(), i_qubits, phase_map.t};
    if (initial.num_qubits() != regs.s_qubits + regs.i_qubits)
        throw DimensionError(fmt::format("initial state has {} qubits, S and I registers need {}",
                                         initial.num_qubits(), regs.s_qubits + regs.i_qubits));
    if (!(h.space().cutoffs().max_levels == s_layout.cutoffs().max_levels))
        throw DimensionError("Hamiltonian space and S-register layout have different cutoffs");

    StateVector state(regs.total());
    state[0] = 0.0;
    for (std::size_t i = 0; i < initial.dimension(); ++i)
        state[i] = initial[i];
    for (std::size_t k = 0; k < regs.e_qubits; ++k)
        state.hadamard(regs.e_offset() + k);

    const std::size_t t = phase_map.t;
    if (backend.kind == EvolutionBackend::Kind::Exact) {
        const auto eig = hermitian_eigensystem(h);
        const auto codes = s_layout.codewords();
        const auto d = static_cast<Eigen::Index>(codes.size());
        const std::size_t blocks = std::size_t{1} << (regs.i_qubits + regs.e_qubits);
        const auto &kt = kernels::active();
        std::vector<Complex> x(codes.size()), y(codes.size());
        for (std::size_t k = 0; k < t; ++k) {
            RealVector angle(d);
            for (Eigen::Index i = 0; i < d; ++i) {
                const double scaled = std::ldexp(phase_map.phase_of(eig.values[i]), static_cast<int>(k));
                angle[i] = -2.0 * std::numbers::pi * (scaled - std::floor(scaled));
            }
            ComplexVector phases(d);
            for (Eigen::Index i = 0; i < d; ++i)
                phases[i] = std::polar(1.0, angle[i]);
            const ComplexMatrix uk = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
            const std::size_t ctrl_block = std::size_t{1} << (regs.i_qubits + k);
            for (std::size_t u = 0; u < blocks; ++u) {
                if (!(u & ctrl_block))
                    continue;
                Complex *base = state.amplitudes().data() + (u << regs.s_qubits);
                for (std::size_t c = 0; c < codes.size(); ++c)
                    x[c] = base[codes[c]];
                kt.matvec(uk.data(), x.data(), y.data(), codes.size());
                for (std::size_t c = 0; c < codes.size(); ++c)
                    base[codes[c]] = y[c];
            }
        }
    } else {
        PauliSum ps = map_operator(h, s_layout);
        ps.add(PauliString(s_layout.num_qubits()), Complex(phase_map.energy_shift, 0.0));
        for (std::size_t k = 0; k < t; ++k) {
            const std::uint64_t ctrl = std::uint64_t{1} << (regs.e_offset() + k);
            const std::size_t reps = std::size_t{1} << k;
            for (std::size_t r = 0; r < reps; ++r)
                trotter_evolution(state, ps, 0, phase_map.tau, backend.order, backend.steps, ctrl);
        }
    }
    state.inverse_qft(regs.e_offset(), regs.e_qubits);
    return state;
}

SampledSpectrum run_qpe(const ManyBodyOperator &h, const QubitLayout &s_layout, const QpeOptions &options,
                        bool positive_semidefinite) {
    const std::size_t total = s_layout.num_qubits() + options.t;
    if (total > options.qubit_cap)
        throw QubitBudgetError(fmt::format("QPE needs {} qubits ({} system + {} phase), cap is {}", total,
                                           s_layout.num_qubits(), options.t, options.qubit_cap));
    if (options.shots == 0)
        throw InvalidArgument("shots must be positive");
    const PhaseMap pm = options.phase_map ? *options.phase_map
                                          : choose_phase_map(h, options.t, options.phase_margin, positive_semidefinite);
    if (pm.t != options.t)
        throw InvalidArgument("phase map and options disagree on t");

    ComplexVector init;
    if (options.initial_state) {
        init = *options.initial_state;
    } else {
        init = ComplexVector::Zero(static_cast<Eigen::Index>(h.dimension()));
        init[0] = 1.0;
    }
    const auto final = qpe_final_state(h, s_layout, pm, options.backend, embed_register_state(init, s_layout), 0);

    const RegisterLayout regs{s_layout.num_qubits(), 0, options.t};
    const std::size_t n = std::size_t{1} << options.t;
    const std::size_t s_dim = std::size_t{1} << regs.s_qubits;
    std::vector<double> marginal(n, 0.0);
    const auto probs = final.probabilities();
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t s = 0; s < s_dim; ++s)
            marginal[m] += probs[(m << regs.s_qubits) | s];

    SampledSpectrum out;
    out.phase_map = pm;
    out.encoding = s_layout.encoding();
    out.backend = options.backend;
    out.seed = options.seed;
    out.shots = options.shots;
    out.registers = regs;
    const auto draws = sample_indices(marginal, options.seed, options.shots, options.jobs);
    out.records.reserve(draws.size());
    out.record_energies.reserve(draws.size());
    for (auto m : draws) {
        const std::uint64_t j = (n - m) % n;
        out.records.push_back({j, {}});
        out.record_energies.push_back(pm.energy_of(j));
    }
    const std::size_t m_last = draws.back();
    out.post_measurement_state.resize(static_cast<Eigen::Index>(s_dim));
    for (std::size_t s = 0; s < s_dim; ++s)
        out.post_measurement_state[static_cast<Eigen::Index>(s)] = final[(m_last << regs.s_qubits) | s];
    out.post_measurement_state.normalize();
    return out;
}

SampledSpectrum run_qpe(const VibronicProblem &problem, const ModeCutoffs &cutoffs, Encoding encoding,
                        const QpeOptions &options, BuildRoute route) {
    const QubitLayout layout(encoding, cutoffs);
    if (layout.num_qubits() + options.t > options.qubit_cap)
        throw QubitBudgetError(fmt::format("QPE needs {} qubits ({} system + {} phase), cap is {}",
                                           layout.num_qubits() + options.t, layout.num_qubits(), options.t,
                                           options.qubit_cap));
    const auto report = build_hamiltonian(problem, cutoffs, route);
    return run_qpe(report.hamiltonian, layout, options, report.positive_semidefinite);
}

} // namespace vibronic

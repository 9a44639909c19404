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

#include "vibronic/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

std::string_view to_string(BuildRoute route) { return route == BuildRoute::QP ? "qp" : "ladder"; }

BuildRoute parse_route(std::string_view text) {
    if (text == "qp")
        return BuildRoute::QP;
    if (text == "ladder")
        return BuildRoute::Ladder;
    throw InvalidArgument(fmt::format("unknown route '{}', expected qp or ladder", text));
}

namespace {

// A linear form sum_i c_i f_i + c_0, with f = nullopt for the constant part.
using LinearForm = std::vector<std::pair<double, std::optional<OperatorFactor>>>;
using TermMap = std::map<std::vector<OperatorFactor>, Complex>;

void require_valid(const VibronicProblem &problem) {
    const auto report = validate(problem);
    if (!report.ok)
        throw ValidationError(report.summary());
}

// Accumulates scale * prod(forms) into the map, expanding left to right.
void expand_product(const std::vector<const LinearForm *> &forms, double scale, TermMap &out, bool with_reverse) {
    std::vector<OperatorFactor> seq;
    auto recurse = [&](auto &&self, std::size_t depth, double coef) -> void {
        if (coef == 0.0)
            return;
        if (depth == forms.size()) {
            if (with_reverse) {
                out[seq] += Complex(0.5 * coef, 0.0);
                out[std::vector<OperatorFactor>(seq.rbegin(), seq.rend())] += Complex(0.5 * coef, 0.0);
            } else {
                out[seq] += Complex(coef, 0.0);
            }
            return;
        }
        for (const auto &[c, f] : *forms[depth]) {
            if (f)
                seq.push_back(*f);
            self(self, depth + 1, coef * c);
            if (f)
                seq.pop_back();
        }
    };
    recurse(recurse, 0, scale);
}

std::vector<ProductTerm> flatten(const TermMap &map) {
    double scale = 0.0;
    for (const auto &[seq, c] : map)
        scale = std::max(scale, std::abs(c));
    std::vector<ProductTerm> terms;
    for (const auto &[seq, c] : map)
        if (std::abs(c) > 1e-14 * std::max(scale, 1.0))
            terms.push_back({c, seq});
    return terms;
}

LinearForm row_form(const RealMatrix &m, Eigen::Index k, FactorKind kind, double constant) {
    LinearForm form;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        form.emplace_back(m(k, j), OperatorFactor{static_cast<std::size_t>(j), kind});
    if (constant != 0.0)
        form.emplace_back(constant, std::nullopt);
    return form;
}

} // namespace

std::vector<ProductTerm> harmonic_terms(const VibronicProblem &problem, BuildRoute route) {
    require_valid(problem);
    const RealMatrix j = duschinsky_j(problem);
    const RealMatrix k = duschinsky_j_inverse_transpose(problem);
    const auto m = j.rows();
    TermMap map;
    std::vector<OperatorFactor> none;

    if (route == BuildRoute::QP) {
        for (Eigen::Index r = 0; r < m; ++r) {
            const double w = problem.omega_b[r];
            const LinearForm q = row_form(j, r, FactorKind::Position, problem.delta[r]);
            const LinearForm p = row_form(k, r, FactorKind::Momentum, 0.0);
            expand_product({&q, &q}, 0.5 * w, map, false);
            expand_product({&p, &p}, 0.5 * w, map, false);
        }
        return flatten(map);
    }

    const RealMatrix a = 0.5 * (j - k);
    const RealMatrix b = 0.5 * (j + k);
    for (Eigen::Index r = 0; r < m; ++r) {
        const double w = problem.omega_b[r];
        const double c = problem.delta[r] / std::sqrt(2.0);
        LinearForm bdag;
        LinearForm bop;
        for (Eigen::Index col = 0; col < m; ++col) {
            const auto mode = static_cast<std::size_t>(col);
            bdag.emplace_back(a(r, col), OperatorFactor{mode, FactorKind::Annihilation});
            bdag.emplace_back(b(r, col), OperatorFactor{mode, FactorKind::Creation});
            bop.emplace_back(a(r, col), OperatorFactor{mode, FactorKind::Creation});
            bop.emplace_back(b(r, col), OperatorFactor{mode, FactorKind::Annihilation});
        }
        if (c != 0.0) {
            bdag.emplace_back(c, std::nullopt);
            bop.emplace_back(c, std::nullopt);
        }
        expand_product({&bdag, &bop}, w, map, false);
        map[none] += Complex(0.5 * w, 0.0);
    }
    return flatten(map);
}

std::vector<ProductTerm> anharmonic_terms(const VibronicProblem &problem) {
    require_valid(problem);
    if (problem.anharmonic.empty())
        return {};
    const RealMatrix j = duschinsky_j(problem);
    std::vector<LinearForm> q;
    for (Eigen::Index r = 0; r < j.rows(); ++r)
        q.push_back(row_form(j, r, FactorKind::Position, problem.delta[r]));
    TermMap map;
    for (const auto &term : problem.anharmonic) {
        std::vector<const LinearForm *> forms;
        for (auto idx : term.modes)
            forms.push_back(&q[idx]);
        expand_product(forms, term.coefficient, map, true);
    }
    return flatten(map);
}

std::vector<ProductTerm> hamiltonian_terms(const VibronicProblem &problem, BuildRoute route) {
    auto terms = harmonic_terms(problem, route);
    auto extra = anharmonic_terms(problem);
    terms.insert(terms.end(), extra.begin(), extra.end());
    return terms;
}

SingleModeOperator factor_matrix(FactorKind kind, std::size_t max_level) {
    switch (kind) {
    case FactorKind::Creation:
        return creation(max_level);
    case FactorKind::Annihilation:
        return annihilation(max_level);
    case FactorKind::Position:
        return position(max_level);
    case FactorKind::Momentum:
        return momentum(max_level);
    }
    throw InvalidArgument("unknown factor kind");
}

ManyBodyOperator assemble(const std::vector<ProductTerm> &terms, const FockSpace &space) {
    std::map<OperatorFactor, ManyBodyOperator> cache;
    auto embedded = [&](const OperatorFactor &f) -> const ManyBodyOperator & {
        auto it = cache.find(f);
        if (it == cache.end()) {
            if (f.mode >= space.num_modes())
                throw DimensionError(fmt::format("term references mode {} of a {}-mode space", f.mode,
                                                 space.num_modes()));
            it = cache.emplace(f, embed(factor_matrix(f.kind, space.max_level(f.mode)), f.mode, space)).first;
        }
        return it->second;
    };

    const auto d = static_cast<Eigen::Index>(space.dimension());
    SparseComplexMatrix total(d, d);
    Complex constant(0.0, 0.0);
    for (const auto &term : terms) {
        if (term.factors.empty()) {
            constant += term.coefficient;
            continue;
        }
        SparseComplexMatrix prod = embedded(term.factors.front()).matrix();
        for (std::size_t i = 1; i < term.factors.size(); ++i)
            prod = (prod * embedded(term.factors[i]).matrix()).pruned();
        total += term.coefficient * prod;
    }
    if (constant != Complex(0.0, 0.0)) {
        SparseComplexMatrix id(d, d);
        id.setIdentity();
        total += constant * id;
    }
    return {space, std::move(total), false};
}

std::pair<std::vector<ManyBodyOperator>, std::vector<ManyBodyOperator>>
build_qb_pb(const VibronicProblem &problem, const FockSpace &space) {
    require_valid(problem);
    if (space.num_modes() != problem.num_modes())
        throw DimensionError(fmt::format("space has {} modes, problem has {}", space.num_modes(), problem.num_modes()));
    const RealMatrix j = duschinsky_j(problem);
    const RealMatrix k = duschinsky_j_inverse_transpose(problem);
    const auto m = problem.num_modes();

    std::vector<ManyBodyOperator> qa, pa;
    for (std::size_t mode = 0; mode < m; ++mode) {
        qa.push_back(embed(position(space.max_level(mode)), mode, space));
        pa.push_back(embed(momentum(space.max_level(mode)), mode, space));
    }
    std::vector<ManyBodyOperator> qb, pb;
    for (std::size_t r = 0; r < m; ++r) {
        auto q = ManyBodyOperator::identity(space) * problem.delta[static_cast<Eigen::Index>(r)];
        auto p = ManyBodyOperator::zero(space);
        for (std::size_t c = 0; c < m; ++c) {
            const auto ri = static_cast<Eigen::Index>(r), ci = static_cast<Eigen::Index>(c);
            if (j(ri, ci) != 0.0)
                q += qa[c] * j(ri, ci);
            if (k(ri, ci) != 0.0)
                p += pa[c] * k(ri, ci);
        }
        qb.push_back(std::move(q));
        pb.push_back(std::move(p));
    }
    return {std::move(qb), std::move(pb)};
}

namespace {

HamiltonianBuildReport finish(BuildRoute route, const FockSpace &space, const std::vector<ProductTerm> &terms,
                              bool psd) {
    HamiltonianBuildReport report;
    report.route = route;
    report.space = space;
    report.term_count = terms.size();
    const auto raw = assemble(terms, space);
    report.hermiticity_deviation = raw.hermiticity_deviation();
    if (report.hermiticity_deviation > kHermiticityTolerance)
        throw NumericalError(fmt::format("assembled {} Hamiltonian deviates from Hermitian by {:.3e}",
                                         to_string(route), report.hermiticity_deviation));
    report.hamiltonian = raw.symmetrized();
    report.positive_semidefinite = psd;
    return report;
}

void require_matching_space(const VibronicProblem &problem, const FockSpace &space) {
    if (space.num_modes() != problem.num_modes())
        throw DimensionError(fmt::format("space has {} modes, problem has {}", space.num_modes(), problem.num_modes()));
}

} // namespace

HamiltonianBuildReport build_harmonic_qp(const VibronicProblem &problem, const FockSpace &space) {
    require_matching_space(problem, space);
    return finish(BuildRoute::QP, space, harmonic_terms(problem, BuildRoute::QP), true);
}

HamiltonianBuildReport build_harmonic_ladder(const VibronicProblem &problem, const FockSpace &space) {
    require_matching_space(problem, space);
    return finish(BuildRoute::Ladder, space, harmonic_terms(problem, BuildRoute::Ladder), true);
}

ManyBodyOperator add_anharmonic(const ManyBodyOperator &h0, const VibronicProblem &problem,
                                const std::vector<ManyBodyOperator> &q_b) {
    if (q_b.size() != problem.num_modes())
        throw DimensionError(fmt::format("{} q_B operators for {} modes", q_b.size(), problem.num_modes()));
    ManyBodyOperator h = h0;
    for (const auto &term : problem.anharmonic) {
        if (term.modes.empty())
            continue;
        for (auto idx : term.modes)
            if (idx >= q_b.size())
                throw InvalidArgument(fmt::format("anharmonic term references mode {} (1-based) of {}", idx + 1,
                                                  q_b.size()));
        ManyBodyOperator prod = q_b[term.modes.front()];
        for (std::size_t i = 1; i < term.modes.size(); ++i)
            prod = prod * q_b[term.modes[i]];
        h += prod.symmetrized() * term.coefficient;
    }
    return h;
}

ManyBodyOperator final_number_operator(const VibronicProblem &problem, const FockSpace &space, std::size_t mode) {
    if (mode >= problem.num_modes())
        throw InvalidArgument(fmt::format("mode {} outside a {}-mode problem", mode + 1, problem.num_modes()));
    const auto [qb, pb] = build_qb_pb(problem, space);
    auto n = qb[mode] * qb[mode] + pb[mode] * pb[mode] - ManyBodyOperator::identity(space);
    return n.symmetrized() * 0.5;
}

namespace {

// Entries this far below the largest are cancellation residue of the operator products.
constexpr double kRoundoffRelative = 1e-13;

ManyBodyOperator drop_roundoff(const ManyBodyOperator &h) {
    SparseComplexMatrix m = h.matrix();
    double scale = 0.0;
    for (Eigen::Index k = 0; k < m.outerSize(); ++k)
        for (SparseComplexMatrix::InnerIterator it(m, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    const double cut = kRoundoffRelative * scale;
    m.prune([cut](Eigen::Index, Eigen::Index, const Complex &v) { return std::abs(v) > cut; });
    return ManyBodyOperator(h.space(), std::move(m), h.hermitian());
}

} // namespace

HamiltonianBuildReport build_hamiltonian(const VibronicProblem &problem, const ModeCutoffs &cutoffs,
                                         BuildRoute route) {
    if (cutoffs.size() != problem.num_modes())
        throw DimensionError(fmt::format("{} cutoffs given for {} modes", cutoffs.size(), problem.num_modes()));
    for (std::size_t k = 0; k < cutoffs.size(); ++k)
        if (cutoffs[k] < 1)
            throw InvalidArgument(fmt::format("cutoff on mode {} must be at least 1", k + 1));
    const FockSpace space(cutoffs);
    auto report = route == BuildRoute::QP ? build_harmonic_qp(problem, space) : build_harmonic_ladder(problem, space);
    if (!problem.anharmonic.empty()) {
        const auto [qb, pb] = build_qb_pb(problem, space);
        report.hamiltonian = add_anharmonic(report.hamiltonian, problem, qb);
        report.hermiticity_deviation = report.hamiltonian.hermiticity_deviation();
        report.term_count += anharmonic_terms(problem).size();
        report.positive_semidefinite = false;
    }
    report.hamiltonian = drop_roundoff(report.hamiltonian);
    return report;
}

} // namespace vibronic

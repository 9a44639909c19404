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
#include <string_view>
#include <utility>
#include <vector>

#include "vibronic/fock.hpp"
#include "vibronic/problem.hpp"

namespace vibronic {

enum class BuildRoute { QP, Ladder };

std::string_view to_string(BuildRoute route);
BuildRoute parse_route(std::string_view text);

enum class FactorKind { Creation, Annihilation, Position, Momentum };

struct OperatorFactor {
    std::size_t mode = 0;
    FactorKind kind = FactorKind::Creation;

    auto operator<=>(const OperatorFactor &) const = default;
};

/// coefficient * f_0 f_1 ... f_{n-1} in the given order; no factors means identity.
struct ProductTerm {
    Complex coefficient;
    std::vector<OperatorFactor> factors;
};

/// Second-quantized H_B on the surface-A ladder (Ladder) or q/p (QP) basis.
/// Identical ordered factor sequences are merged and |c| < 1e-14 dropped.
std::vector<ProductTerm> harmonic_terms(const VibronicProblem &problem, BuildRoute route);
/// Expansion of sum_t k_t * sym(prod q_B) in surface-A position factors.
std::vector<ProductTerm> anharmonic_terms(const VibronicProblem &problem);
/// harmonic_terms followed by anharmonic_terms.
std::vector<ProductTerm> hamiltonian_terms(const VibronicProblem &problem, BuildRoute route);

/// Single-mode matrix of one factor at the given cutoff.
SingleModeOperator factor_matrix(FactorKind kind, std::size_t max_level);

/// Sum of embedded ordered products; not symmetrized.
ManyBodyOperator assemble(const std::vector<ProductTerm> &terms, const FockSpace &space);

struct HamiltonianBuildReport {
    BuildRoute route = BuildRoute::QP;
    FockSpace space;
    ManyBodyOperator hamiltonian;
    std::size_t term_count = 0;
    double hermiticity_deviation = 0.0;
    /// True when H is a sum of squares (harmonic), so its spectrum is >= 0.
    bool positive_semidefinite = false;
};

/// q_B,k = sum_j J[k][j] q_A,j + delta_k and p_B,k = sum_j (J^-T)[k][j] p_A,j.
std::pair<std::vector<ManyBodyOperator>, std::vector<ManyBodyOperator>>
build_qb_pb(const VibronicProblem &problem, const FockSpace &space);

HamiltonianBuildReport build_harmonic_qp(const VibronicProblem &problem, const FockSpace &space);
HamiltonianBuildReport build_harmonic_ladder(const VibronicProblem &problem, const FockSpace &space);

/// H0 + sum_t k_t (P_t + P_t^dagger) / 2 with P_t the ordered product of q_B.
ManyBodyOperator add_anharmonic(const ManyBodyOperator &h0, const VibronicProblem &problem,
                                const std::vector<ManyBodyOperator> &q_b);

/// N_B,k = (q_B,k^2 + p_B,k^2 - 1) / 2, the final-surface occupation of mode k.
ManyBodyOperator final_number_operator(const VibronicProblem &problem, const FockSpace &space, std::size_t mode);

/// Harmonic build by the requested route plus the problem's anharmonic terms.
HamiltonianBuildReport build_hamiltonian(const VibronicProblem &problem, const ModeCutoffs &cutoffs,
                                         BuildRoute route = BuildRoute::QP);

} // namespace vibronic

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

#include "vibronic/qubit_mapper.hpp"

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

namespace {

// |b><b'| on one qubit.
PauliSum single_qubit_projector(bool b, bool b_prime) {
    PauliSum s(1);
    const Complex half(0.5, 0.0);
    if (b == b_prime) {
        s.add(PauliString::from_string("I"), half);
        s.add(PauliString::from_string("Z"), b ? -half : half);
    } else {
        // |0><1| = (X + iY)/2, |1><0| = (X - iY)/2
        s.add(PauliString::from_string("X"), half);
        s.add(PauliString::from_string("Y"), b ? Complex(0.0, -0.5) : Complex(0.0, 0.5));
    }
    return s;
}

// Level pair on the mode's own qubits only.
PauliSum local_levelpair(std::size_t l, std::size_t lp, std::size_t nq, Encoding enc) {
    if (enc == Encoding::Binary) {
        PauliSum out = single_qubit_projector(l & 1U, lp & 1U);
        for (std::size_t q = 1; q < nq; ++q)
            out = tensor(out, single_qubit_projector((l >> q) & 1U, (lp >> q) & 1U));
        return out;
    }
    PauliSum out(nq);
    if (l == lp) {
        const auto z = single_qubit_projector(true, true);
        return z.placed(nq, l);
    }
    const auto up = single_qubit_projector(true, false).placed(nq, l);
    const auto down = single_qubit_projector(false, true).placed(nq, lp);
    return up * down;
}

void require_level(std::size_t level, std::size_t mode, const QubitLayout &layout) {
    if (mode >= layout.num_modes())
        throw DimensionError(fmt::format("mode {} outside a {}-mode layout", mode, layout.num_modes()));
    if (level > layout.cutoffs()[mode])
        throw InvalidArgument(fmt::format("level {} exceeds cutoff {} on mode {}", level, layout.cutoffs()[mode], mode));
}

// Local (mode-only) image of a single-mode matrix.
PauliSum local_operator(const ComplexMatrix &m, std::size_t mode, const QubitLayout &layout) {
    const auto &range = layout.mode_range(mode);
    if (m == ComplexMatrix::Identity(m.rows(), m.cols()))
        return PauliSum::identity(range.count);
    PauliSum out(range.count);
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (m(r, c) != Complex(0.0, 0.0))
                out += local_levelpair(static_cast<std::size_t>(r), static_cast<std::size_t>(c), range.count,
                                       layout.encoding()) *
                       m(r, c);
    out.prune();
    return out;
}

// Tensor of per-mode local sums (identity where missing) over the layout.
PauliSum assemble_modes(const std::vector<const PauliSum *> &per_mode, const QubitLayout &layout) {
    PauliSum out;
    for (std::size_t k = 0; k < layout.num_modes(); ++k) {
        const auto n = layout.mode_range(k).count;
        const PauliSum local = per_mode[k] ? *per_mode[k] : PauliSum::identity(n);
        out = k == 0 ? local : tensor(out, local);
    }
    return out;
}

} // namespace

PauliSum levelpair_to_pauli(std::size_t l, std::size_t l_prime, std::size_t mode, const QubitLayout &layout) {
    require_level(l, mode, layout);
    require_level(l_prime, mode, layout);
    const auto &range = layout.mode_range(mode);
    return local_levelpair(l, l_prime, range.count, layout.encoding()).placed(layout.num_qubits(), range.offset);
}

PauliSum map_operator(const SingleModeOperator &op, std::size_t mode, const QubitLayout &layout) {
    if (mode >= layout.num_modes())
        throw DimensionError(fmt::format("mode {} outside a {}-mode layout", mode, layout.num_modes()));
    if (op.dim() != layout.cutoffs()[mode] + 1)
        throw DimensionError(fmt::format("operator dimension {} does not match cutoff {} of mode {}", op.dim(),
                                         layout.cutoffs()[mode], mode));
    const auto &range = layout.mode_range(mode);
    return local_operator(op.matrix, mode, layout).placed(layout.num_qubits(), range.offset);
}

PauliSum map_operator(const std::vector<ProductTerm> &terms, const QubitLayout &layout) {
    const auto m = layout.num_modes();
    PauliSum out(layout.num_qubits());
    std::map<std::vector<OperatorFactor>, PauliSum> cache;
    for (const auto &term : terms) {
        std::vector<std::vector<OperatorFactor>> by_mode(m);
        for (const auto &f : term.factors) {
            if (f.mode >= m)
                throw DimensionError(fmt::format("term references mode {} of a {}-mode layout", f.mode, m));
            by_mode[f.mode].push_back(f);
        }
        std::vector<const PauliSum *> locals(m, nullptr);
        for (std::size_t k = 0; k < m; ++k) {
            if (by_mode[k].empty())
                continue;
            auto it = cache.find(by_mode[k]);
            if (it == cache.end()) {
                const auto level = layout.cutoffs()[k];
                ComplexMatrix prod = factor_matrix(by_mode[k].front().kind, level).matrix;
                for (std::size_t i = 1; i < by_mode[k].size(); ++i)
                    prod = prod * factor_matrix(by_mode[k][i].kind, level).matrix;
                it = cache.emplace(by_mode[k], local_operator(prod, k, layout)).first;
            }
            locals[k] = &it->second;
        }
        out += assemble_modes(locals, layout) * term.coefficient;
    }
    out.prune();
    return out;
}

PauliSum map_operator(const ManyBodyOperator &op, const QubitLayout &layout) {
    const auto &space = op.space();
    if (!(space.cutoffs().max_levels == layout.cutoffs().max_levels))
        throw DimensionError("operator space and qubit layout have different cutoffs");
    const auto m = space.num_modes();
    if (op.matrix().nonZeros() == static_cast<Eigen::Index>(space.dimension()) &&
        op.to_dense() == ComplexMatrix::Identity(op.matrix().rows(), op.matrix().cols()))
        return PauliSum::identity(layout.num_qubits());
    std::vector<std::map<std::pair<std::size_t, std::size_t>, PauliSum>> cache(m);
    PauliSum out(layout.num_qubits());
    const auto &mat = op.matrix();
    for (Eigen::Index c = 0; c < mat.outerSize(); ++c)
        for (SparseComplexMatrix::InnerIterator it(mat, c); it; ++it) {
            if (it.value() == Complex(0.0, 0.0))
                continue;
            const auto row = static_cast<std::size_t>(it.row()), col = static_cast<std::size_t>(it.col());
            std::vector<const PauliSum *> locals(m);
            for (std::size_t k = 0; k < m; ++k) {
                const auto key = std::make_pair(space.level(row, k), space.level(col, k));
                auto found = cache[k].find(key);
                if (found == cache[k].end())
                    found = cache[k]
                                .emplace(key, local_levelpair(key.first, key.second, layout.mode_range(k).count,
                                                              layout.encoding()))
                                .first;
                locals[k] = &found->second;
            }
            out += assemble_modes(locals, layout) * it.value();
        }
    out.prune();
    return out;
}

SparseComplexMatrix pauli_to_matrix(const PauliSum &ps, std::size_t max_qubits) {
    const auto n = ps.num_qubits();
    if (n > max_qubits)
        throw QubitBudgetError(fmt::format("{} qubits exceed the verification limit of {}", n, max_qubits));
    const std::uint64_t dim = std::uint64_t{1} << n;
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(ps.size() * dim);
    for (const auto &[p, c] : ps.terms()) {
        const std::uint64_t x = p.x_words().empty() ? 0 : p.x_words()[0];
        const std::uint64_t z = p.z_words().empty() ? 0 : p.z_words()[0];
        const Complex base = c * ipow[p.y_count() % 4];
        for (std::uint64_t b = 0; b < dim; ++b) {
            const Complex v = (std::popcount(b & z) & 1) ? -base : base;
            triplets.emplace_back(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b), v);
        }
    }
    SparseComplexMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.prune([](Eigen::Index, Eigen::Index, const Complex &v) { return std::abs(v) > 1e-300; });
    return m;
}

ComplexMatrix restrict_to_codespace(const SparseComplexMatrix &full, const QubitLayout &layout) {
    const auto codes = layout.codewords();
    const auto d = static_cast<Eigen::Index>(codes.size());
    ComplexMatrix out(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
            out(r, c) = full.coeff(static_cast<Eigen::Index>(codes[static_cast<std::size_t>(r)]),
                                   static_cast<Eigen::Index>(codes[static_cast<std::size_t>(c)]));
    return out;
}

ResourceReport resource_count(const PauliSum &ps) {
    ResourceReport report;
    report.term_count = ps.size();
    std::vector<std::vector<std::uint64_t>> layers;
    for (const auto &[p, c] : ps.terms()) {
        ++report.weight_histogram[p.weight()];
        if (p.is_identity())
            continue;
        const auto support = p.support();
        bool placed = false;
        for (auto &layer : layers) {
            bool disjoint = true;
            for (std::size_t i = 0; i < support.size() && disjoint; ++i)
                disjoint = (layer[i] & support[i]) == 0;
            if (disjoint) {
                for (std::size_t i = 0; i < support.size(); ++i)
                    layer[i] |= support[i];
                placed = true;
                break;
            }
        }
        if (!placed)
            layers.push_back(support);
    }
    report.layer_depth = layers.size();
    return report;
}

} // namespace vibronic

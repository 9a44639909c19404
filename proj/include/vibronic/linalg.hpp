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

#include "vibronic/fock.hpp"
#include "vibronic/types.hpp"

namespace vibronic {

/// Ascending eigenvalues with unit eigenvectors in the columns.
struct Eigensystem {
    RealVector values;
    ComplexMatrix vectors;
};

/// Full dense Hermitian eigendecomposition (divide and conquer). Real input
/// takes the real symmetric path.
Eigensystem hermitian_eigensystem(const ComplexMatrix &h);
Eigensystem hermitian_eigensystem(const ManyBodyOperator &h);

/// Eigenvalues of H with the weights |<basis_index|psi_i>|^2, ascending.
struct SpectralWeights {
    RealVector values;
    RealVector weights;
};

/// Householder tridiagonalization that leaves e_{basis_index} fixed, then an
/// implicit QL sweep tracking one eigenvector row. O(D^2) memory and work
/// beyond the reduction, no eigenvectors formed.
/// For real operators with a narrow band after reordering the modes (smallest
/// local dimension fastest), basis index 0 takes the O(D^2 b) band path.
SpectralWeights spectral_weights(const ManyBodyOperator &h, std::size_t basis_index = 0);
SpectralWeights spectral_weights(const ComplexMatrix &h, std::size_t basis_index = 0);

/// Real symmetric band matrix in lower storage, band(d, j) = A(j + d, j) for
/// d = 0..bandwidth. One spare row is added internally for the bulge.
SpectralWeights spectral_weights_band(const RealMatrix &lower_band, std::size_t bandwidth);

/// Givens bulge-chasing reduction of a lower band (bandwidth + 2 rows, last
/// row zero) to tridiagonal form. Rotations never touch row or column 0.
void band_to_tridiagonal(RealMatrix &lower_band, std::size_t bandwidth, RealVector &diag, RealVector &offdiag);

/// Symmetric tridiagonal eigenvalues plus the first component of every
/// eigenvector, both unsorted. diag and offdiag are overwritten; offdiag has
/// n-1 entries.
void tridiagonal_first_row(RealVector &diag, RealVector &offdiag, RealVector &first_row);

} // namespace vibronic

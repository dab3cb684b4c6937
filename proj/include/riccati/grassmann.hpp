// Copyright 2026 The riccati-diag Authors
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

#include <utility>

#include "riccati/hermitian.hpp"

namespace riccati {

/// Inverse square roots of the Gram matrices (1 + Z^dagger Z, k x k) and
/// (1 + Z Z^dagger, (n-k) x (n-k)), in that order. Both factors are
/// Hermitian positive definite; computed by eigendecomposition with the
/// eigenvalue map lambda -> lambda^{-1/2}, which needs no spectral-radius
/// assumption on Z.
std::pair<ComplexMatrix, ComplexMatrix> inv_sqrt_gram(const GrassmannCoordinate& z);

/// The chart unitary
///
///   U(Z) = [ 1_k        -Z^dagger ] [ (1+Z^dagger Z)^{-1/2}                ]
///          [ Z           1_{n-k}  ] [              (1+Z Z^dagger)^{-1/2}  ]
///
/// `part` supplies the shapes; throws ShapeMismatchError if Z disagrees.
UnitaryFactor build_unitary(const BlockPartition& part, const GrassmannCoordinate& z);

/// Rank-k projector P(Z) = U(Z) P0 U(Z)^dagger with P0 = diag(1_k, 0_{n-k}).
/// Satisfies P^2 = P, P^dagger = P, tr P = k.
ComplexMatrix grassmann_projector(const GrassmannCoordinate& z);

/// U^dagger H U, re-symmetrized. Trace and spectrum are preserved up to the
/// unitarity defect of the factor.
HermitianMatrix conjugate(const HermitianMatrix& h, const UnitaryFactor& u);

}  // namespace riccati

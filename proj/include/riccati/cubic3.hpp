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
#include <vector>

#include "riccati/hermitian.hpp"

// Explicit 3x3 pipeline: eliminate z2 to get a cubic in z1, solve it by
// Cardano over the complex numbers, recover z2 from a quadratic, filter the
// candidate pairs by the joint residual, scale the reduced 2x2 with the
// direct rank-one inverse square root, and finish with one more quadratic.
namespace riccati::cubic3 {

/// Coefficients of the z1 cubic, descending degree.
struct CubicCoefficients {
  cdouble c3, c2, c1, c0;
};

struct Triple {
  double lambda1, lambda2, lambda3;
};

/// The four cubic coefficients written out for
/// H = [[h1, conj(a), conj(b)], [a, h2, conj(g)], [b, g, h3]].
CubicCoefficients cubic_coefficients(const HermitianMatrix& h);

/// All roots of the (possibly degree-deflated) polynomial via Cardano with
/// complex cube roots, Newton-polished. Throws DegenerateAllZeroError when
/// every coefficient vanishes; callers fall back to the general reduction.
std::vector<cdouble> complex_cubic_roots(const CubicCoefficients& c);

/// Roots z2 of conj(g) z2^2 + (h2 - h3 + conj(b) z1) z2 + conj(a) z1 - g = 0.
/// Quadratic when g != 0, linear when only the middle coefficient survives.
/// Throws FullyDegenerateError when the equation carries no information.
std::vector<cdouble> quad_z2(cdouble z1, const HermitianMatrix& h);

/// Max-norm of the two coupled-equation residuals at (z1, z2).
double pair_residual(cdouble z1, cdouble z2, const HermitianMatrix& h);

/// The candidate pair minimizing the joint residual; throws NoValidPairError
/// when even the best pair exceeds `tol` (<= 0 picks 1e-10 * ||H||_max).
std::pair<cdouble, cdouble> select_root_pair(
    const std::vector<std::pair<cdouble, cdouble>>& candidates, const HermitianMatrix& h,
    double tol = 0.0);

struct Reduced2x2 {
  double k1, k2;
  cdouble zeta;
};

/// The scaled 2x2 block (1+Z^dagger Z)^{-1/2} H~_plus (1+Z^dagger Z)^{-1/2}
/// with the direct two-component inverse-square-root formula. Throws
/// ResidualTooLargeError if the product fails to be Hermitian-real on the
/// diagonal, the symptom of a bad root pair.
Reduced2x2 reduced_2x2(const HermitianMatrix& h, cdouble z1, cdouble z2);

/// The three eigenvalues of a 3x3 Hermitian matrix through the explicit
/// pipeline. Falls back to the general reduction on a fully degenerate
/// cubic.
Triple eigenvalues_3x3(const HermitianMatrix& h);

}  // namespace riccati::cubic3

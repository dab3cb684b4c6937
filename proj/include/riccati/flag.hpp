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

#include <cstdint>

#include "riccati/hermitian.hpp"

// One-shot 3x3 diagonalization over the flag manifold SU(3)/U(1)xU(1):
// a three-parameter unitary U(x, y, z) whose conjugation can kill all three
// lower-triangular entries at once. Residual evaluation is exact; the
// simultaneous solve is experimental and never on the default path.
namespace riccati::flag {

struct FlagCoordinate {
  cdouble x, y, z;

  double delta1() const;  // 1 + |x|^2 + |y|^2
  double delta2() const;  // 1 + |z|^2 + |xz - y|^2
};

/// The three strictly-lower entries of U_M^dagger H U_M.
struct FlagResiduals {
  cdouble w21, w31, w32;

  double max_abs() const;
};

/// U = U_M U_D with
///   U_M = [ 1, -(cx+cy z),      cx cz - cy ]
///         [ x, D1 - x(cx+cy z), -cz        ]     (c* = conjugates)
///         [ y, z D1 - y(cx+cy z), 1        ]
///   U_D = diag(D1^{-1/2}, (D1 D2)^{-1/2}, D2^{-1/2}).
UnitaryFactor build_flag_unitary(const FlagCoordinate& c);

/// Hand-expanded w21, w31, w32 formulas (w32 in its factored form through
/// w31). Validated against the brute-force triple product in tests.
FlagResiduals flag_residuals(const FlagCoordinate& c, const HermitianMatrix& h);

struct FlagSolveResult {
  FlagCoordinate coordinate;
  FlagResiduals residuals;
  bool converged;
  int iterations;
  double residual_norm;
};

/// Damped Newton on the real-ified six-dimensional system
/// (w21, w31, w32) = 0 with a central finite-difference Jacobian. Seeded
/// from the reduction pipeline's eigenvectors mapped into flag coordinates,
/// then a deterministic ladder. Returns the best iterate even on failure,
/// flagged through `converged`.
FlagSolveResult flag_solve(const HermitianMatrix& h, double tol = 1e-10,
                           int max_iter = 80);

}  // namespace riccati::flag

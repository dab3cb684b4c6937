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

#include <array>
#include <string>
#include <utility>

#include "riccati/grassmann.hpp"
#include "riccati/hermitian.hpp"

// The matrix Riccati equation
//
//   R(Z) = Z V^dagger Z + Z H_plus - H_minus Z - V = 0
//
// whose root block-diagonalizes the conjugation U(Z)^dagger H U(Z).
// Closed form for the 2x2 case, a Sylvester solve for the linearized
// equation, a one-step recursive refinement for square invertible V, and
// Newton iteration as the production route to exact roots.
namespace riccati::solver {

enum class Method { kClosed2x2, kSylvesterInit, kApproxII, kNewton };

std::string method_name(Method m);

struct RiccatiSolution {
  GrassmannCoordinate z;
  double residual_norm;  // ||R(Z)||_max
  Method method;
  int iterations;
};

struct EigenvaluePair {
  double lambda1;
  double lambda2;
};

/// R(Z) = Z V^dagger Z + Z H_plus - H_minus Z - V, an (n-k) x k matrix.
ComplexMatrix riccati_residual(const GrassmannCoordinate& z, const BlockPartition& part);

/// Both roots of the scalar equation conj(alpha) z^2 + (h1-h2) z - alpha = 0
/// together with the eigenvalues each root produces. For alpha = 0 the
/// matrix is already diagonal and both slots hold z = 0, (h1, h2).
struct TwoByTwoSolve {
  std::array<RiccatiSolution, 2> roots;
  std::array<EigenvaluePair, 2> eigenvalues;
};
TwoByTwoSolve solve_2x2(double h1, double h2, cdouble alpha);

/// Strict spectral inequality max eig(H_minus) < min eig(H_plus): the decay
/// condition that makes the integral representation of the Sylvester
/// solution converge.
bool spectral_gap_check(const BlockPartition& part);

/// Approximation I: solve Z H_plus - H_minus Z = V in closed form through
/// both eigendecompositions (transformed entries V_ij / (nu_j - mu_i)).
/// residual_norm reports the full Riccati residual, nonzero in general.
/// Throws NoSpectralGapError when some nu_j - mu_i <= 0.
RiccatiSolution sylvester_integral(const BlockPartition& part);

/// Approximation II, one application of the recursion
///   Z = H_minus (V^dagger)^{-1}
///     + {V - H_minus (V^dagger)^{-1} H_plus} (Z0 + (V^dagger)^{-1} H_plus)^{-1} (V^dagger)^{-1}
/// for square blocks (n = 2m, k = m) with invertible V. Callers iterate.
RiccatiSolution approx_ii(const BlockPartition& part, const GrassmannCoordinate& z0);

/// Newton iteration on R. Each step solves the Frechet linearization
///   D (V^dagger Z + H_plus) + (Z V^dagger - H_minus) D = -R(Z)
/// by vectorization. Stops when residual <= tol * max(1, ||H||_max).
/// Throws SingularLinearizationError / NoConvergenceError (with best seen).
RiccatiSolution newton_refine(const BlockPartition& part, const GrassmannCoordinate& z0,
                              double tol, int max_iter);

/// H~_plus = H_plus + Z^dagger V + V^dagger Z + Z^dagger H_minus Z and
/// H~_minus = H_minus - Z V^dagger - V Z^dagger + Z H_plus Z^dagger.
std::pair<HermitianMatrix, HermitianMatrix> reduced_hamiltonians(
    const BlockPartition& part, const GrassmannCoordinate& z);

}  // namespace riccati::solver

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
#include <utility>
#include <vector>

#include "riccati/riccati_solver.hpp"

// Full diagonalization by peeling: split off the last coordinate with a
// row-vector chart Z, extract one eigenvalue, and recurse on the scaled
// (n-1) x (n-1) reduced Hamiltonian until the problem is 2x2.
namespace riccati::reduction {

/// Residual tolerance (relative to max(1, ||H||_max)) used by default.
inline constexpr double kDefaultTol = 1e-11;

/// Seed for the deterministic pseudo-random tail of the Newton seed ladder.
/// The environment variable RICCATI_DIAG_SEED overrides the built-in value.
std::uint64_t ladder_seed();

struct ReductionStep {
  int step_index;          // 0-based peel counter
  GrassmannCoordinate z;   // 1 x (n_step - 1) row chart
  double eigenvalue;       // the split-off eigenvalue
  UnitaryFactor unitary;   // full-size: step factor padded with identity
  double residual_norm;    // Riccati residual at the accepted root
};

struct DiagonalizationResult {
  std::vector<double> eigenvalues;  // ascending
  UnitaryFactor unitary;            // accumulated n x n factor
  double max_offdiag;               // ||U^dagger H U - diag||_max
  std::vector<ReductionStep> steps;
};

/// Solve the n-1 coupled quadratics
///   (sum_j conj(v_nj) z_j) z_k + sum_j (H_plus)_jk z_j - h_n z_k - v_nk = 0
/// by Newton refinement over a deterministic seed ladder. Returns the row
/// chart and its residual. Throws NoConvergenceError when every seed fails.
std::pair<GrassmannCoordinate, double> vector_riccati_solve(const HermitianMatrix& h,
                                                            double tol = kDefaultTol,
                                                            std::uint64_t seed = ladder_seed());

/// Closed-form (1 + Z^dagger Z)^{-1/2} for a nonzero row vector Z. Pivots on
/// the largest entry before forming W = (z_2/z_p, ...) so the quotient form
/// stays well-conditioned, and expands the middle factor so no nested
/// inverse square root is ever taken. Throws ZeroVectorError for Z = 0
/// (callers use the identity shortcut).
ComplexMatrix rank_one_inv_sqrt(const GrassmannCoordinate& z);

/// One peel: returns the (n-1) x (n-1) reduced Hermitian matrix
/// (1+Z^dagger Z)^{-1/2} H~_plus (1+Z^dagger Z)^{-1/2} and the step record
/// with the split-off eigenvalue h~_n / (1 + sum |z_j|^2). The step's
/// unitary is local (n_step x n_step); the driver embeds it.
std::pair<HermitianMatrix, ReductionStep> reduce_once(const HermitianMatrix& h,
                                                      double tol = kDefaultTol,
                                                      std::uint64_t seed = ladder_seed());

/// The full recursion: reduce_once while n > 2, the closed 2x2 form at the
/// bottom, unitaries accumulated as products of embedded step factors.
DiagonalizationResult riccati_diagonalize(const HermitianMatrix& h,
                                          double tol = kDefaultTol,
                                          std::uint64_t seed = ladder_seed());

}  // namespace riccati::reduction

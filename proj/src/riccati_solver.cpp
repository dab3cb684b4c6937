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

#include "riccati/riccati_solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "riccati/errors.hpp"
#include "riccati/oracle.hpp"

namespace riccati::solver {

std::string method_name(Method m) {
  switch (m) {
    case Method::kClosed2x2:
      return "closed2x2";
    case Method::kSylvesterInit:
      return "sylvester";
    case Method::kApproxII:
      return "approx2";
    case Method::kNewton:
      return "newton";
  }
  return "unknown";
}

ComplexMatrix riccati_residual(const GrassmannCoordinate& z, const BlockPartition& part) {
  if (z.z.rows() != part.h_minus.dim() || z.z.cols() != part.k) {
    throw ShapeMismatchError("chart coordinate does not fit the partition");
  }
  return z.z * part.v.adjoint() * z.z + z.z * part.h_plus.matrix() -
         part.h_minus.matrix() * z.z - part.v;
}

namespace {

double scalar_residual(double h1, double h2, cdouble alpha, cdouble z) {
  return std::abs(std::conj(alpha) * z * z + (h1 - h2) * z - alpha);
}

EigenvaluePair pair_from_root(double h1, double h2, cdouble alpha, cdouble z) {
  const double zz = std::norm(z);
  const double cross = 2.0 * std::real(std::conj(alpha) * z);
  return EigenvaluePair{(h1 + cross + h2 * zz) / (1.0 + zz),
                        (h2 - cross + h1 * zz) / (1.0 + zz)};
}

}  // namespace

TwoByTwoSolve solve_2x2(double h1, double h2, cdouble alpha) {
  if (std::abs(alpha) == 0.0) {
    GrassmannCoordinate zero{ComplexMatrix(1, 1)};
    RiccatiSolution s{zero, 0.0, Method::kClosed2x2, 0};
    EigenvaluePair p{h1, h2};
    return TwoByTwoSolve{{s, s}, {p, p}};
  }
  const double b = h1 - h2;
  const double disc = std::sqrt(b * b + 4.0 * std::norm(alpha));
  // The numerators -b -+ disc multiply to -4|alpha|^2; form the large one
  // first and recover the other from the product to dodge cancellation.
  const double big_num = (b >= 0.0) ? -(b + disc) : (disc - b);
  const double small_num = -4.0 * std::norm(alpha) / big_num;
  const cdouble two_conj_alpha = 2.0 * std::conj(alpha);

  TwoByTwoSolve out{{RiccatiSolution{GrassmannCoordinate{ComplexMatrix(1, 1)}, 0.0,
                                     Method::kClosed2x2, 0},
                     RiccatiSolution{GrassmannCoordinate{ComplexMatrix(1, 1)}, 0.0,
                                     Method::kClosed2x2, 0}},
                    {EigenvaluePair{0.0, 0.0}, EigenvaluePair{0.0, 0.0}}};
  const cdouble roots[2] = {big_num / two_conj_alpha, small_num / two_conj_alpha};
  for (int i = 0; i < 2; ++i) {
    ComplexMatrix zm(1, 1);
    zm(0, 0) = roots[i];
    out.roots[i] = RiccatiSolution{GrassmannCoordinate{std::move(zm)},
                                   scalar_residual(h1, h2, alpha, roots[i]),
                                   Method::kClosed2x2, 0};
    out.eigenvalues[i] = pair_from_root(h1, h2, alpha, roots[i]);
  }
  return out;
}

bool spectral_gap_check(const BlockPartition& part) {
  const auto plus = oracle::jacobi_eigensolve(part.h_plus, 1e-13, false);
  const auto minus = oracle::jacobi_eigensolve(part.h_minus, 1e-13, false);
  return minus.eigenvalues.back() < plus.eigenvalues.front();
}

RiccatiSolution sylvester_integral(const BlockPartition& part) {
  const oracle::EigenDecomposition plus = oracle::hermitian_eigen(part.h_plus.matrix());
  const oracle::EigenDecomposition minus = oracle::hermitian_eigen(part.h_minus.matrix());

  const std::size_t k = part.k;
  const std::size_t nk = part.h_minus.dim();
  ComplexMatrix vt = minus.vectors.adjoint() * part.v * plus.vectors;
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double gap = plus.values[j] - minus.values[i];
      if (gap <= 0.0) {
        throw NoSpectralGapError("decay condition violated: nu_j - mu_i <= 0");
      }
      vt(i, j) /= gap;
    }
  }
  GrassmannCoordinate z{minus.vectors * vt * plus.vectors.adjoint()};
  const double residual = riccati_residual(z, part).max_norm();
  return RiccatiSolution{std::move(z), residual, Method::kSylvesterInit, 0};
}

RiccatiSolution approx_ii(const BlockPartition& part, const GrassmannCoordinate& z0) {
  const std::size_t k = part.k;
  const std::size_t nk = part.h_minus.dim();
  if (k != nk) {
    throw ShapeMismatchError("the recursion needs square blocks (n = 2m, k = m)");
  }
  if (z0.z.rows() != nk || z0.z.cols() != k) {
    throw ShapeMismatchError("seed coordinate does not fit the partition");
  }

  const ComplexMatrix vadj = part.v.adjoint();
  if (condition_1norm(vadj) > 1e14) {
    throw SingularVError("V is numerically singular");
  }
  const ComplexMatrix vadj_inv = inverse(vadj);

  ComplexMatrix shift = z0.z + vadj_inv * part.h_plus.matrix();
  if (condition_1norm(shift) > 1e14) {
    throw SingularShiftError("Z0 + (V^dagger)^{-1} H_plus is numerically singular");
  }

  const ComplexMatrix hm_vinv = part.h_minus.matrix() * vadj_inv;
  GrassmannCoordinate z{hm_vinv + (part.v - hm_vinv * part.h_plus.matrix()) *
                                      inverse(shift) * vadj_inv};
  const double residual = riccati_residual(z, part).max_norm();
  return RiccatiSolution{std::move(z), residual, Method::kApproxII, 1};
}

RiccatiSolution newton_refine(const BlockPartition& part, const GrassmannCoordinate& z0,
                              double tol, int max_iter) {
  if (tol <= 0.0) throw Error("Newton tolerance must be positive");
  const double target = tol * std::max(1.0, part.assemble().max_norm());

  ComplexMatrix z = z0.z;
  ComplexMatrix residual = riccati_residual(GrassmannCoordinate{z}, part);
  double res_norm = residual.max_norm();
  ComplexMatrix best_z = z;
  double best_norm = res_norm;
  int iterations = 0;

  while (res_norm > target && iterations < max_iter) {
    // D (V^dagger Z + H_plus) + (Z V^dagger - H_minus) D = -R.
    const ComplexMatrix right = part.v.adjoint() * z + part.h_plus.matrix();
    const ComplexMatrix left = z * part.v.adjoint() - part.h_minus.matrix();
    ComplexMatrix rhs = residual;
    rhs *= cdouble(-1.0, 0.0);
    ComplexMatrix delta(z.rows(), z.cols());
    try {
      delta = solve_commutator_system(right, left, rhs);
    } catch (const SingularMatrixError&) {
      throw SingularLinearizationError("vectorized Newton system is singular");
    }

    // Full step first; halve a few times if the residual refuses to drop.
    double step = 1.0;
    ComplexMatrix next_z = z;
    ComplexMatrix next_res = residual;
    double next_norm = res_norm;
    bool accepted = false;
    for (int half = 0; half < 6; ++half) {
      next_z = z + step * delta;
      next_res = riccati_residual(GrassmannCoordinate{next_z}, part);
      next_norm = next_res.max_norm();
      if (next_norm < res_norm || next_norm <= target) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++iterations;
    z = next_z;
    residual = next_res;
    res_norm = next_norm;
    if (res_norm < best_norm) {
      best_norm = res_norm;
      best_z = z;
    }
    if (!accepted && res_norm > target) break;  // stagnated
  }

  if (best_norm > target) {
    throw NoConvergenceError("Newton refinement stalled at residual " +
                                 std::to_string(best_norm),
                             best_norm);
  }
  return RiccatiSolution{GrassmannCoordinate{std::move(best_z)}, best_norm,
                         Method::kNewton, iterations};
}

std::pair<HermitianMatrix, HermitianMatrix> reduced_hamiltonians(
    const BlockPartition& part, const GrassmannCoordinate& z) {
  if (z.z.rows() != part.h_minus.dim() || z.z.cols() != part.k) {
    throw ShapeMismatchError("chart coordinate does not fit the partition");
  }
  const ComplexMatrix zadj = z.z.adjoint();
  const ComplexMatrix vadj = part.v.adjoint();
  ComplexMatrix plus = part.h_plus.matrix() + zadj * part.v + vadj * z.z +
                       zadj * part.h_minus.matrix() * z.z;
  ComplexMatrix minus = part.h_minus.matrix() - z.z * vadj - part.v * zadj +
                        z.z * part.h_plus.matrix() * zadj;
  return {HermitianMatrix::symmetrize(plus), HermitianMatrix::symmetrize(minus)};
}

}  // namespace riccati::solver

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

#include "riccati/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>
#include <vector>

#include "riccati/detail/splitmix.hpp"
#include "riccati/errors.hpp"

namespace riccati::reduction {

namespace {

constexpr std::uint64_t kBuiltinSeed = 88172645463325252ULL;

ComplexMatrix zero_row(std::size_t m) { return ComplexMatrix(1, m); }

// U_D for the last-coordinate split: diag(S, 1/sqrt(1 + sum |z_j|^2)) with S
// the closed-form inverse square root (identity when Z = 0).
UnitaryFactor step_unitary(const GrassmannCoordinate& z) {
  const std::size_t m = z.z.cols();
  ComplexMatrix ud = ComplexMatrix::identity(m + 1);
  double rho = 0.0;
  for (std::size_t j = 0; j < m; ++j) rho += std::norm(z.z(0, j));
  if (!z.is_zero()) {
    ud.set_block(0, 0, rank_one_inv_sqrt(z));
  }
  ud(m, m) = 1.0 / std::sqrt(1.0 + rho);

  ComplexMatrix um = ComplexMatrix::identity(m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    um(j, m) = -std::conj(z.z(0, j));
    um(m, j) = z.z(0, j);
  }
  return UnitaryFactor(um * ud);
}

}  // namespace

std::uint64_t ladder_seed() {
  if (const char* env = std::getenv("RICCATI_DIAG_SEED")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::uint64_t>(parsed);
  }
  return kBuiltinSeed;
}

ComplexMatrix rank_one_inv_sqrt(const GrassmannCoordinate& z) {
  if (z.z.rows() != 1) throw ShapeMismatchError("expected a 1 x (n-1) row chart");
  const std::size_t m = z.z.cols();
  if (z.is_zero()) throw ZeroVectorError("zero chart has the identity as its factor");

  double rho = 0.0;
  for (std::size_t j = 0; j < m; ++j) rho += std::norm(z.z(0, j));
  const double inv_root = 1.0 / std::sqrt(1.0 + rho);

  if (m == 1) {
    ComplexMatrix out(1, 1);
    out(0, 0) = inv_root;
    return out;
  }

  // Pivot on the largest entry so the quotient vector W stays bounded; the
  // printed form divides by z_1 and is singular there.
  std::size_t pivot = 0;
  for (std::size_t j = 1; j < m; ++j) {
    if (std::abs(z.z(0, j)) > std::abs(z.z(0, pivot))) pivot = j;
  }

  std::vector<cdouble> w(m - 1);
  {
    const cdouble zp = z.z(0, pivot);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == pivot) continue;
      w[idx++] = z.z(0, j) / zp;
    }
  }
  double s = 0.0;
  for (const cdouble& e : w) s += std::norm(e);

  // The middle factor expands through (1 + W^dagger W)^{-1} =
  // 1 - W^dagger W / (1 + W W^dagger), so no nested inverse square root
  // appears: the whole factor collapses to
  //   [[ a + s/(1+s), c W ], [ c W^dagger, 1 + c W^dagger W ]]
  // with a = 1/((1+s) sqrt(sigma)) and c = (1/sqrt(sigma) - 1)/(1+s).
  const double a = inv_root / (1.0 + s);
  const double c = (inv_root - 1.0) / (1.0 + s);

  ComplexMatrix permuted(m, m);
  permuted(0, 0) = a + s / (1.0 + s);
  for (std::size_t j = 1; j < m; ++j) {
    permuted(0, j) = c * w[j - 1];
    permuted(j, 0) = std::conj(permuted(0, j));
    for (std::size_t l = 1; l < m; ++l) {
      permuted(j, l) = c * std::conj(w[j - 1]) * w[l - 1];
    }
    permuted(j, j) += 1.0;
  }

  // Undo the transposition that brought the pivot to the front.
  std::vector<std::size_t> perm(m);
  perm[0] = pivot;
  {
    std::size_t idx = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != pivot) perm[idx++] = j;
    }
  }
  ComplexMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(perm[i], perm[j]) = permuted(i, j);
  return out;
}

std::pair<GrassmannCoordinate, double> vector_riccati_solve(const HermitianMatrix& h,
                                                            double tol,
                                                            std::uint64_t seed) {
  const std::size_t n = h.dim();
  if (n < 2) throw Error("vector Riccati needs n >= 2");
  const BlockPartition part = block_split(h, n - 1);
  const std::size_t m = n - 1;
  const double scale = std::max(1.0, h.matrix().max_norm());
  const double target = tol * scale;

  if (part.v.max_norm() <= target) {
    return {GrassmannCoordinate{zero_row(m)}, part.v.max_norm()};
  }

  std::vector<GrassmannCoordinate> seeds;
  seeds.reserve(11);
  try {
    if (solver::spectral_gap_check(part)) {
      seeds.push_back(solver::sylvester_integral(part).z);
    }
  } catch (const NoSpectralGapError&) {
  }
  seeds.push_back(GrassmannCoordinate{zero_row(m)});
  {
    double mean_diag = 0.0;
    for (std::size_t j = 0; j < m; ++j) mean_diag += part.h_plus.diagonal(j);
    mean_diag /= static_cast<double>(m);
    const double denom = mean_diag - part.h_minus.diagonal(0);
    if (std::abs(denom) > 1e-8 * scale) {
      ComplexMatrix scaled = part.v;
      scaled *= cdouble(1.0 / denom, 0.0);
      seeds.push_back(GrassmannCoordinate{std::move(scaled)});
    }
  }
  detail::SplitMix64 rng{seed ^ (0xABCDEF1234567ULL * static_cast<std::uint64_t>(n))};
  for (int extra = 0; extra < 8; ++extra) {
    ComplexMatrix random_row(1, m);
    for (std::size_t j = 0; j < m; ++j) random_row(0, j) = rng.disc_entry();
    seeds.push_back(GrassmannCoordinate{std::move(random_row)});
  }

  double best = std::numeric_limits<double>::infinity();
  for (const GrassmannCoordinate& s : seeds) {
    try {
      solver::RiccatiSolution sol = solver::newton_refine(part, s, tol, 80);
      return {sol.z, sol.residual_norm};
    } catch (const NoConvergenceError& e) {
      best = std::min(best, e.best_residual);
    } catch (const SingularLinearizationError&) {
    }
  }
  throw NoConvergenceError("vector Riccati seed ladder exhausted", best);
}

std::pair<HermitianMatrix, ReductionStep> reduce_once(const HermitianMatrix& h, double tol,
                                                      std::uint64_t seed) {
  const std::size_t n = h.dim();
  if (n < 3) throw Error("reduce_once needs n >= 3");

  auto [z, residual] = vector_riccati_solve(h, tol, seed);
  const BlockPartition part = block_split(h, n - 1);
  auto [h_plus_t, h_minus_t] = solver::reduced_hamiltonians(part, z);

  double rho = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) rho += std::norm(z.z(0, j));
  const double eigenvalue = h_minus_t.diagonal(0) / (1.0 + rho);

  ComplexMatrix reduced = h_plus_t.matrix();
  if (!z.is_zero()) {
    const ComplexMatrix s = rank_one_inv_sqrt(z);
    reduced = s * reduced * s;
  }

  ReductionStep step{0, z, eigenvalue, step_unitary(z), residual};
  return {HermitianMatrix::symmetrize(reduced), std::move(step)};
}

DiagonalizationResult riccati_diagonalize(const HermitianMatrix& h, double tol,
                                          std::uint64_t seed) {
  const std::size_t n = h.dim();

  if (n == 1) {
    return DiagonalizationResult{{h.diagonal(0)},
                                 UnitaryFactor(ComplexMatrix::identity(1)),
                                 0.0,
                                 {}};
  }

  ComplexMatrix u_total = ComplexMatrix::identity(n);
  std::vector<ReductionStep> steps;
  std::vector<double> diag_order(n, 0.0);
  HermitianMatrix current = h;
  int step_index = 0;

  try {
    for (std::size_t size = n; size > 2; --size) {
      auto [reduced, step] = reduce_once(current, tol, seed);
      ComplexMatrix embedded = ComplexMatrix::identity(n);
      embedded.set_block(0, 0, step.unitary.matrix());
      u_total = u_total * embedded;
      diag_order[size - 1] = step.eigenvalue;
      steps.push_back(ReductionStep{step_index++, step.z, step.eigenvalue,
                                    UnitaryFactor(std::move(embedded)),
                                    step.residual_norm});
      current = std::move(reduced);
    }
  } catch (const NoConvergenceError& e) {
    std::vector<double> partial(diag_order.end() - static_cast<std::ptrdiff_t>(steps.size()),
                                diag_order.end());
    throw NoConvergenceError(e.what(), e.best_residual, std::move(partial), step_index);
  }

  // Closed 2x2 form at the bottom; the smaller-modulus root keeps the final
  // rotation close to the identity.
  {
    const ComplexMatrix& m2 = current.matrix();
    const cdouble alpha = m2(1, 0);
    const solver::TwoByTwoSolve bottom =
        solver::solve_2x2(current.diagonal(0), current.diagonal(1), alpha);
    const solver::RiccatiSolution& picked = bottom.roots[1];
    const cdouble zroot = picked.z.z(0, 0);
    const double denom = std::sqrt(1.0 + std::norm(zroot));
    ComplexMatrix u2 = ComplexMatrix::identity(2);
    u2(0, 0) = 1.0 / denom;
    u2(0, 1) = -std::conj(zroot) / denom;
    u2(1, 0) = zroot / denom;
    u2(1, 1) = 1.0 / denom;

    ComplexMatrix embedded = ComplexMatrix::identity(n);
    embedded.set_block(0, 0, u2);
    u_total = u_total * embedded;
    diag_order[0] = bottom.eigenvalues[1].lambda1;
    diag_order[1] = bottom.eigenvalues[1].lambda2;
    steps.push_back(ReductionStep{step_index, picked.z, diag_order[1],
                                  UnitaryFactor(std::move(embedded)),
                                  picked.residual_norm});
  }

  UnitaryFactor unitary(std::move(u_total));
  const ComplexMatrix w = unitary.matrix().adjoint() * h.matrix() * unitary.matrix();
  double max_offdiag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) max_offdiag = std::max(max_offdiag, std::abs(w(i, j)));

  std::vector<double> sorted = diag_order;
  std::sort(sorted.begin(), sorted.end());
  return DiagonalizationResult{std::move(sorted), std::move(unitary), max_offdiag,
                               std::move(steps)};
}

}  // namespace riccati::reduction

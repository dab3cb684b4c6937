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

#include <doctest.h>

#include <cmath>
#include <random>

#include "riccati/grassmann.hpp"
#include "riccati/oracle.hpp"
#include "riccati/riccati_solver.hpp"
#include "test_support.hpp"

using namespace riccati;

namespace {

HermitianMatrix scalar_block(double h_plus, double h_minus, double v) {
  ComplexMatrix m(2, 2);
  m(0, 0) = h_plus;
  m(1, 1) = h_minus;
  m(1, 0) = v;
  m(0, 1) = v;
  return HermitianMatrix::symmetrize(m);
}

ComplexMatrix one_by_one(cdouble v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

ComplexMatrix two_by_two_of(double h1, double h2, cdouble alpha) {
  ComplexMatrix m(2, 2);
  m(0, 0) = h1;
  m(1, 1) = h2;
  m(1, 0) = alpha;
  m(0, 1) = std::conj(alpha);
  return m;
}

// Matrix exponential through the eigendecomposition; test-only helper for
// the quadrature oracle.
ComplexMatrix herm_exp(const ComplexMatrix& h, double t) {
  const oracle::EigenDecomposition eig = oracle::hermitian_eigen(h);
  const std::size_t n = h.rows();
  ComplexMatrix scaled(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double f = std::exp(t * eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) = eig.vectors(i, j) * f;
  }
  return scaled * eig.vectors.adjoint();
}

}  // namespace

TEST_CASE("riccati_residual closed evaluations") {
  std::mt19937_64 rng(31);
  const HermitianMatrix h = testing::random_hermitian(5, rng);
  const BlockPartition part = block_split(h, 2);

  // Z = 0 leaves -V.
  GrassmannCoordinate zero{ComplexMatrix(3, 2)};
  ComplexMatrix expected = part.v;
  expected *= cdouble(-1.0, 0.0);
  CHECK(max_abs_diff(solver::riccati_residual(zero, part), expected) < 1e-15);

  // Scalar hand value: H_plus = 2, H_minus = 0, V = 1, z = 1/2 gives 1/4.
  const BlockPartition sp = block_split(scalar_block(2.0, 0.0, 1.0), 1);
  const ComplexMatrix r = solver::riccati_residual(GrassmannCoordinate{one_by_one(0.5)}, sp);
  CHECK(std::abs(r(0, 0) - cdouble(0.25)) < 1e-15);

  GrassmannCoordinate bad{ComplexMatrix(2, 2)};
  CHECK_THROWS_AS(solver::riccati_residual(bad, part), ShapeMismatchError);
}

TEST_CASE("solve_2x2 closed form") {
  // h1 = h2 = 0, alpha = 1: roots +-1, eigenvalues {1, -1}.
  const solver::TwoByTwoSolve a = solver::solve_2x2(0.0, 0.0, 1.0);
  CHECK(std::abs(std::abs(a.roots[0].z.z(0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(a.roots[0].z.z(0, 0) + a.roots[1].z.z(0, 0)) < 1e-14);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::min(a.eigenvalues[i].lambda1, a.eigenvalues[i].lambda2) ==
          doctest::Approx(-1.0));
    CHECK(std::max(a.eigenvalues[i].lambda1, a.eigenvalues[i].lambda2) ==
          doctest::Approx(1.0));
  }

  // h1 = 1, h2 = -1, alpha = 2: roots (-1 +- sqrt 5)/2, eigenvalues +- sqrt 5.
  const solver::TwoByTwoSolve b = solver::solve_2x2(1.0, -1.0, 2.0);
  const double golden = 0.5 * (-1.0 + std::sqrt(5.0));
  bool found = false;
  for (int i = 0; i < 2; ++i) {
    if (std::abs(b.roots[i].z.z(0, 0) - golden) < 1e-12) found = true;
    CHECK(std::abs(std::max(b.eigenvalues[i].lambda1, b.eigenvalues[i].lambda2) -
                   std::sqrt(5.0)) < 1e-12);
  }
  CHECK(found);

  // alpha = 0 short-circuits to the diagonal.
  const solver::TwoByTwoSolve c = solver::solve_2x2(3.0, 7.0, 0.0);
  CHECK(c.roots[0].z.z(0, 0) == cdouble(0.0));
  CHECK(c.eigenvalues[0].lambda1 == doctest::Approx(3.0));
  CHECK(c.eigenvalues[0].lambda2 == doctest::Approx(7.0));
}

TEST_CASE("solve_2x2 root and eigenvalue identities") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double h1 = dist(rng), h2 = dist(rng);
    const cdouble alpha(dist(rng), dist(rng));
    if (std::abs(alpha) < 1e-12) continue;
    const solver::TwoByTwoSolve s = solver::solve_2x2(h1, h2, alpha);
    for (int i = 0; i < 2; ++i) {
      const cdouble z = s.roots[i].z.z(0, 0);
      const double scale =
          std::abs(alpha) * std::norm(z) + std::abs(h1 - h2) * std::abs(z) +
          std::abs(alpha) + 1.0;
      CHECK(std::abs(std::conj(alpha) * z * z + (h1 - h2) * z - alpha) < 1e-13 * scale);
      const double sum = s.eigenvalues[i].lambda1 + s.eigenvalues[i].lambda2;
      const double prod = s.eigenvalues[i].lambda1 * s.eigenvalues[i].lambda2;
      CHECK(std::abs(sum - (h1 + h2)) < 1e-12 * std::max(1.0, std::abs(h1 + h2)));
      const double det = h1 * h2 - std::norm(alpha);
      CHECK(std::abs(prod - det) < 1e-12 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST_CASE("spectral_gap_check") {
  CHECK(solver::spectral_gap_check(block_split(scalar_block(2.0, 0.0, 0.1), 1)));
  CHECK_FALSE(solver::spectral_gap_check(block_split(scalar_block(0.0, 2.0, 0.1), 1)));

  ComplexMatrix m(4, 4);
  m(0, 0) = 3.0;
  m(1, 1) = 5.0;
  m(2, 2) = 1.0;
  m(3, 3) = 2.0;
  CHECK(solver::spectral_gap_check(block_split(HermitianMatrix::symmetrize(m), 2)));
}

TEST_CASE("sylvester_integral closed cases") {
  const BlockPartition scalar = block_split(scalar_block(2.0, 0.0, 1.0), 1);
  const solver::RiccatiSolution s = solver::sylvester_integral(scalar);
  CHECK(std::abs(s.z.z(0, 0) - cdouble(0.5)) < 1e-14);
  CHECK(s.residual_norm == doctest::Approx(0.25));  // full Riccati residual

  // H_plus = [4], H_minus = diag(1, 2), V = (1, 1)^T -> Z = (1/3, 1/2)^T.
  ComplexMatrix m(3, 3);
  m(0, 0) = 4.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  m(1, 0) = 1.0;
  m(2, 0) = 1.0;
  m(0, 1) = 1.0;
  m(0, 2) = 1.0;
  const BlockPartition part = block_split(HermitianMatrix::symmetrize(m), 1);
  const solver::RiccatiSolution s2 = solver::sylvester_integral(part);
  CHECK(std::abs(s2.z.z(0, 0) - cdouble(1.0 / 3.0)) < 1e-13);
  CHECK(std::abs(s2.z.z(1, 0) - cdouble(0.5)) < 1e-13);

  CHECK_THROWS_AS(solver::sylvester_integral(block_split(scalar_block(0.0, 2.0, 1.0), 1)),
                  NoSpectralGapError);
}

TEST_CASE("sylvester_integral agrees with Simpson quadrature of the integral form") {
  std::mt19937_64 rng(33);
  const HermitianMatrix h = testing::gapped_hermitian(5, 2, rng);
  const BlockPartition part = block_split(h, 2);
  const solver::RiccatiSolution s = solver::sylvester_integral(part);

  // Composite Simpson on e^{t H_minus} V e^{-t H_plus} over [0, T].
  const auto plus = oracle::jacobi_eigensolve(part.h_plus, 1e-13, false);
  const auto minus = oracle::jacobi_eigensolve(part.h_minus, 1e-13, false);
  const double gap = plus.eigenvalues.front() - minus.eigenvalues.back();
  REQUIRE(gap > 0.0);
  const double big_t = 40.0 / gap;
  const int segments = 2000;  // Simpson needs an even count
  const double step = big_t / segments;
  ComplexMatrix acc(part.v.rows(), part.v.cols());
  for (int i = 0; i <= segments; ++i) {
    const double t = step * i;
    const double weight = (i == 0 || i == segments) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += cdouble(weight, 0.0) * (herm_exp(part.h_minus.matrix(), t) * part.v *
                                   herm_exp(part.h_plus.matrix(), -t));
  }
  acc *= cdouble(step / 3.0, 0.0);
  CHECK(max_abs_diff(acc, s.z.z) < 1e-6 * std::max(1.0, s.z.z.max_norm()));
}

TEST_CASE("sylvester_integral vs brute force on gapped instances") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(2, 7);
    const std::size_t n = nd(rng);
    std::uniform_int_distribution<std::size_t> kd(1, n - 1);
    const std::size_t k = kd(rng);
    const BlockPartition part = block_split(testing::gapped_hermitian(n, k, rng), k);
    const solver::RiccatiSolution s = solver::sylvester_integral(part);
    CHECK(max_abs_diff(s.z.z, oracle::sylvester_bruteforce(part)) < 1e-10);
    const ComplexMatrix linear = s.z.z * part.h_plus.matrix() -
                                 part.h_minus.matrix() * s.z.z - part.v;
    CHECK(linear.max_norm() < 1e-10 * std::max(1e-300, part.v.max_norm()));
  }
}

TEST_CASE("approx_ii hand cases") {
  // m = 1, H_plus = 0, H_minus = 0, V = 1, z0 = 1 lands on the exact root.
  const BlockPartition p1 = block_split(scalar_block(0.0, 0.0, 1.0), 1);
  const solver::RiccatiSolution s1 =
      solver::approx_ii(p1, GrassmannCoordinate{one_by_one(1.0)});
  CHECK(std::abs(s1.z.z(0, 0) - cdouble(1.0)) < 1e-14);
  CHECK(s1.residual_norm < 1e-14);

  // m = 1, H_plus = 1, H_minus = 0, V = 1 from the Sylvester seed 1: Z = 1/2,
  // residual 1/4 versus the seed's residual 1.
  const BlockPartition p2 = block_split(scalar_block(1.0, 0.0, 1.0), 1);
  const solver::RiccatiSolution seed = solver::sylvester_integral(p2);
  CHECK(std::abs(seed.z.z(0, 0) - cdouble(1.0)) < 1e-14);
  CHECK(seed.residual_norm == doctest::Approx(1.0));
  const solver::RiccatiSolution s2 = solver::approx_ii(p2, seed.z);
  CHECK(std::abs(s2.z.z(0, 0) - cdouble(0.5)) < 1e-14);
  CHECK(s2.residual_norm == doctest::Approx(0.25));

  // Singular V is rejected.
  ComplexMatrix m(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 2.0;
  m(2, 2) = -1.0;
  m(3, 3) = -2.0;
  m(2, 0) = 1.0;
  m(0, 2) = 1.0;  // V = [[1, 0], [0, 0]]
  const BlockPartition p3 = block_split(HermitianMatrix::symmetrize(m), 2);
  CHECK_THROWS_AS(solver::approx_ii(p3, GrassmannCoordinate{ComplexMatrix(2, 2)}),
                  SingularVError);
}

TEST_CASE("newton_refine convergence") {
  // A fixed point returns immediately.
  const BlockPartition p1 = block_split(scalar_block(0.0, 0.0, 1.0), 1);
  const solver::RiccatiSolution s1 =
      solver::newton_refine(p1, GrassmannCoordinate{one_by_one(1.0)}, 1e-12, 20);
  CHECK(s1.iterations == 0);
  CHECK(std::abs(s1.z.z(0, 0) - cdouble(1.0)) < 1e-14);

  // 2x2 with h1 = 1, h2 = -1, alpha = 2 from z0 = 0.5 reaches the golden root.
  const BlockPartition p2 = block_split(scalar_block(1.0, -1.0, 2.0), 1);
  const solver::RiccatiSolution s2 =
      solver::newton_refine(p2, GrassmannCoordinate{one_by_one(0.5)}, 1e-12, 8);
  CHECK(std::abs(s2.z.z(0, 0) - cdouble(0.5 * (-1.0 + std::sqrt(5.0)))) < 1e-12);
  CHECK(s2.iterations <= 8);

  // Random gapped 5x5 at k = 3 from the Sylvester seed.
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 25; ++trial) {
    const HermitianMatrix h = testing::gapped_hermitian(5, 3, rng);
    const BlockPartition part = block_split(h, 3);
    const solver::RiccatiSolution seed = solver::sylvester_integral(part);
    const solver::RiccatiSolution sol = solver::newton_refine(part, seed.z, 1e-10, 20);
    CHECK(sol.residual_norm <= 1e-10 * std::max(1.0, h.matrix().max_norm()));
    CHECK(sol.iterations <= 20);

    // The root block-diagonalizes the conjugation and the two scaled blocks
    // carry the spectrum.
    const UnitaryFactor u = build_unitary(part, sol.z);
    const HermitianMatrix w = conjugate(h, u);
    CHECK(w.matrix().block(3, 0, 2, 3).max_norm() < 1e-10 * h.matrix().max_norm());

    const auto blocks = solver::reduced_hamiltonians(part, sol.z);
    const auto factors = inv_sqrt_gram(sol.z);
    const ComplexMatrix top = factors.first * blocks.first.matrix() * factors.first;
    const ComplexMatrix bottom = factors.second * blocks.second.matrix() * factors.second;
    std::vector<double> both;
    for (double v :
         oracle::jacobi_eigensolve(HermitianMatrix::symmetrize(top), 1e-13, false)
             .eigenvalues) {
      both.push_back(v);
    }
    for (double v :
         oracle::jacobi_eigensolve(HermitianMatrix::symmetrize(bottom), 1e-13, false)
             .eigenvalues) {
      both.push_back(v);
    }
    std::sort(both.begin(), both.end());
    const auto full = oracle::jacobi_eigensolve(h, 1e-13, false);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::abs(both[i] - full.eigenvalues[i]) <
            1e-9 * std::max(1.0, h.matrix().max_norm()));
    }
  }
}

TEST_CASE("newton_refine singular linearization") {
  // At alpha = 1, h1 = h2 the scalar residual z^2 - 1 has derivative zero at
  // the origin, so the first vectorized system is singular.
  const BlockPartition part = block_split(scalar_block(0.0, 0.0, 1.0), 1);
  CHECK_THROWS_AS(
      solver::newton_refine(part, GrassmannCoordinate{one_by_one(0.0)}, 1e-12, 10),
      SingularLinearizationError);
}

TEST_CASE("newton_refine quadratic residual decay on the 2x2 family") {
  // Near a simple root r_{k+1} <= C r_k^2 with C = |alpha| / |f'(z*)|^2 and
  // |f'(z*)| = sqrt((h1-h2)^2 + 4|alpha|^2), so C <= 1/(4 |alpha|) here.
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  int observed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double h1 = dist(rng), h2 = dist(rng);
    const cdouble alpha(dist(rng), dist(rng));
    if (std::abs(alpha) < 0.3) continue;
    const BlockPartition part =
        block_split(HermitianMatrix::symmetrize(two_by_two_of(h1, h2, alpha)), 1);
    const cdouble root = solver::solve_2x2(h1, h2, alpha).roots[1].z.z(0, 0);
    const GrassmannCoordinate z0{one_by_one(root + cdouble(0.05, -0.03))};

    // An unreachable tolerance exposes the residual after exactly k steps.
    std::vector<double> residuals;
    for (int k = 1; k <= 3; ++k) {
      try {
        solver::newton_refine(part, z0, 1e-18, k);
        residuals.push_back(0.0);
      } catch (const NoConvergenceError& e) {
        residuals.push_back(e.best_residual);
      }
    }
    const double c_bound = 2.0 / (4.0 * std::abs(alpha));
    for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
      // Only windows inside the quadratic basin and above the roundoff floor.
      if (residuals[i] > 1e-2 || residuals[i] < 1e-12) continue;
      CHECK(residuals[i + 1] <= c_bound * residuals[i] * residuals[i] + 1e-14);
      ++observed;
    }
  }
  CHECK(observed >= 20);  // enough windows actually exercised the bound
}

TEST_CASE("reduced_hamiltonians") {
  std::mt19937_64 rng(36);
  const HermitianMatrix h = testing::random_hermitian(5, rng);
  const BlockPartition part = block_split(h, 2);

  // Z = 0 returns the blocks untouched.
  const auto id_blocks =
      solver::reduced_hamiltonians(part, GrassmannCoordinate{ComplexMatrix(3, 2)});
  CHECK(max_abs_diff(id_blocks.first.matrix(), part.h_plus.matrix()) == 0.0);
  CHECK(max_abs_diff(id_blocks.second.matrix(), part.h_minus.matrix()) == 0.0);

  // 2x2 at k = 1: the scalars are the eigenvalue-formula numerators.
  const double h1 = 0.9, h2 = -0.4;
  const cdouble alpha(0.3, -0.8);
  ComplexMatrix m(2, 2);
  m(0, 0) = h1;
  m(1, 1) = h2;
  m(1, 0) = alpha;
  m(0, 1) = std::conj(alpha);
  const BlockPartition p2 = block_split(HermitianMatrix::symmetrize(m), 1);
  const cdouble z(0.6, 0.2);
  const auto blocks = solver::reduced_hamiltonians(p2, GrassmannCoordinate{one_by_one(z)});
  const double cross = 2.0 * std::real(std::conj(alpha) * z);
  CHECK(blocks.first.diagonal(0) ==
        doctest::Approx(h1 + cross + h2 * std::norm(z)).epsilon(1e-12));
  CHECK(blocks.second.diagonal(0) ==
        doctest::Approx(h2 - cross + h1 * std::norm(z)).epsilon(1e-12));

  // At an exact root the conjugation takes the block form with the scaled
  // reduced Hamiltonians on the diagonal.
  const HermitianMatrix gapped = testing::gapped_hermitian(6, 2, rng);
  const BlockPartition gp = block_split(gapped, 2);
  const solver::RiccatiSolution sol =
      solver::newton_refine(gp, solver::sylvester_integral(gp).z, 1e-12, 30);
  const auto rb = solver::reduced_hamiltonians(gp, sol.z);
  const auto factors = inv_sqrt_gram(sol.z);
  ComplexMatrix expected(6, 6);
  expected.set_block(0, 0, factors.first * rb.first.matrix() * factors.first);
  expected.set_block(2, 2, factors.second * rb.second.matrix() * factors.second);
  const HermitianMatrix w = conjugate(gapped, build_unitary(gp, sol.z));
  CHECK(max_abs_diff(w.matrix(), expected) < 1e-10 * gapped.matrix().max_norm());
}

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

#include <limits>
#include <random>

#include "riccati/complex_matrix.hpp"
#include "riccati/errors.hpp"
#include "test_support.hpp"

using namespace riccati;

TEST_CASE("identity and basic arithmetic") {
  ComplexMatrix a(2, 2, {cdouble(1, 0), cdouble(0, 1), cdouble(2, -1), cdouble(3, 0)});
  const ComplexMatrix id = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(a * id, a) == 0.0);
  CHECK(max_abs_diff(id * a, a) == 0.0);
  CHECK(max_abs_diff(a + a, cdouble(2.0) * a) < 1e-15);
  CHECK((a - a).max_norm() == 0.0);
  CHECK(a.trace() == cdouble(4, 0));
}

TEST_CASE("adjoint of a product") {
  std::mt19937_64 rng(1);
  const ComplexMatrix a = testing::random_matrix(3, 4, rng);
  const ComplexMatrix b = testing::random_matrix(4, 2, rng);
  CHECK(max_abs_diff((a * b).adjoint(), b.adjoint() * a.adjoint()) < 1e-14);
}

TEST_CASE("shape mismatches throw") {
  ComplexMatrix a(2, 3);
  ComplexMatrix b(2, 2);
  CHECK_THROWS_AS(a * a, ShapeMismatchError);
  CHECK_THROWS_AS(a + b, ShapeMismatchError);
  CHECK_THROWS_AS(a.trace(), NotSquareError);
}

TEST_CASE("lu_solve recovers a known solution") {
  std::mt19937_64 rng(2);
  const ComplexMatrix a = testing::random_matrix(5, 5, rng);
  const ComplexMatrix x = testing::random_matrix(5, 2, rng);
  const ComplexMatrix solved = lu_solve(a, a * x);
  CHECK(max_abs_diff(solved, x) < 1e-12);
}

TEST_CASE("inverse and condition number") {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = testing::random_matrix(4, 4, rng);
  CHECK(max_abs_diff(a * inverse(a), ComplexMatrix::identity(4)) < 1e-12);
  CHECK(condition_1norm(a) >= 1.0);

  ComplexMatrix singular(2, 2);
  singular(0, 0) = 1.0;
  singular(0, 1) = 2.0;
  singular(1, 0) = 2.0;
  singular(1, 1) = 4.0;
  CHECK_THROWS_AS(lu_solve(singular, ComplexMatrix::identity(2)), SingularMatrixError);
  CHECK(condition_1norm(singular) == std::numeric_limits<double>::infinity());
}

TEST_CASE("commutator system solves X P + Q X = C") {
  std::mt19937_64 rng(4);
  const ComplexMatrix p = testing::random_matrix(3, 3, rng);
  const ComplexMatrix q = testing::random_matrix(2, 2, rng);
  const ComplexMatrix x = testing::random_matrix(2, 3, rng);
  const ComplexMatrix c = x * p + q * x;
  CHECK(max_abs_diff(solve_commutator_system(p, q, c), x) < 1e-12);
}

TEST_CASE("norms") {
  ComplexMatrix a(2, 2, {cdouble(3, 4), cdouble(0, 0), cdouble(0, 0), cdouble(1, 0)});
  CHECK(a.max_norm() == doctest::Approx(5.0));
  CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(26.0)));
  CHECK(a.one_norm() == doctest::Approx(5.0));
}

TEST_CASE("finite checks") {
  ComplexMatrix a(1, 1);
  CHECK(a.all_finite());
  a(0, 0) = cdouble(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_FALSE(a.all_finite());
  CHECK_FALSE(is_finite(a(0, 0)));
}

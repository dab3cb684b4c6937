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

#include <complex>
#include <cstddef>
#include <vector>

namespace riccati {

using cdouble = std::complex<double>;

bool is_finite(cdouble value);

/// Dense row-major complex matrix. Everything in this project runs at desk
/// scale (n of a few dozen), so storage is always owned and operations
/// return fresh values rather than views.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cdouble& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  /// Conjugate transpose.
  ComplexMatrix adjoint() const;

  cdouble trace() const;
  double max_norm() const;  // max_ij |a_ij|
  double frobenius_norm() const;
  double one_norm() const;  // max column sum
  bool all_finite() const;

  ComplexMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                      std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b);

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cdouble scalar);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cdouble> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cdouble scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cdouble scalar);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Solve A X = B by Gaussian elimination with partial pivoting.
/// Throws SingularMatrixError when a pivot collapses.
ComplexMatrix lu_solve(ComplexMatrix a, ComplexMatrix b);

ComplexMatrix inverse(const ComplexMatrix& a);

/// kappa_1(A) = ||A||_1 ||A^-1||_1; +infinity when the factorization fails.
double condition_1norm(const ComplexMatrix& a);

/// Solve X P + Q X = C for X by vectorizing into a dense
/// (rows(C)*cols(C))-dimensional linear system.
ComplexMatrix solve_commutator_system(const ComplexMatrix& p, const ComplexMatrix& q,
                                      const ComplexMatrix& c);

}  // namespace riccati

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

#include <cstddef>

#include "riccati/complex_matrix.hpp"
#include "riccati/errors.hpp"

namespace riccati {

/// Relative hermiticity tolerance used when none is given explicitly.
/// The gate compares the defect ||H - H^dagger||_max against
/// tol * max(1, ||H||_max).
inline constexpr double kDefaultHermiticityTol = 1e-12;

/// A square matrix that has passed the hermiticity gate and been replaced by
/// (H + H^dagger)/2, so downstream algebra sees an exactly Hermitian value
/// (real diagonal, conjugate-symmetric off-diagonal, bit for bit).
class HermitianMatrix {
 public:
  /// Symmetrize without a tolerance gate. Meant for matrices that are
  /// Hermitian by construction (conjugations, reduced Hamiltonians) where
  /// only rounding noise needs to be squashed.
  static HermitianMatrix symmetrize(const ComplexMatrix& m);

  std::size_t dim() const { return data_.rows(); }
  const ComplexMatrix& matrix() const { return data_; }

  /// ||H - H^dagger||_max of the matrix as originally supplied.
  double hermiticity_defect() const { return defect_; }

  double diagonal(std::size_t i) const { return data_(i, i).real(); }

 private:
  HermitianMatrix(ComplexMatrix data, double defect);
  friend HermitianMatrix validate_hermitian(const ComplexMatrix& m, double tol);

  ComplexMatrix data_;
  double defect_;
};

/// Gate + symmetrize. `tol` is relative: the defect is compared against
/// tol * max(1, ||m||_max). Throws NotSquareError, NonFiniteError or
/// NotHermitianError.
HermitianMatrix validate_hermitian(const ComplexMatrix& m,
                                   double tol = kDefaultHermiticityTol);

/// The (H_plus, H_minus, V) split of a Hermitian matrix at row/column k:
///
///   H = [ H_plus     V^dagger ]        H_plus  k x k
///       [ V          H_minus  ]        V       (n-k) x k
///
/// Reassembling the blocks reproduces the source matrix exactly.
struct BlockPartition {
  std::size_t k;
  HermitianMatrix h_plus;
  HermitianMatrix h_minus;
  ComplexMatrix v;

  std::size_t dim() const { return h_plus.dim() + h_minus.dim(); }
  ComplexMatrix assemble() const;
};

/// Throws BadSplitIndexError unless 1 <= k <= n-1.
BlockPartition block_split(const HermitianMatrix& h, std::size_t k);

/// The chart coordinate Z, an (n-k) x k complex matrix. Only finiteness is
/// required; the shape ties it to a particular BlockPartition.
struct GrassmannCoordinate {
  explicit GrassmannCoordinate(ComplexMatrix z_in);

  ComplexMatrix z;

  std::size_t chart_dim() const { return z.rows() + z.cols(); }
  bool is_zero(double eps = 0.0) const;
};

/// A matrix checked to be unitary at construction:
/// ||U^dagger U - I||_max <= 1e-10 * n, with the measured defect kept.
class UnitaryFactor {
 public:
  explicit UnitaryFactor(ComplexMatrix u);

  const ComplexMatrix& matrix() const { return u_; }
  double unitarity_defect() const { return defect_; }
  std::size_t dim() const { return u_.rows(); }

 private:
  ComplexMatrix u_;
  double defect_;
};

}  // namespace riccati

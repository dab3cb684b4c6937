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

#include "riccati/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace riccati {

namespace {

double hermiticity_defect_of(const ComplexMatrix& m) {
  double defect = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
  return defect;
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    }
    out(i, i) = cdouble(out(i, i).real(), 0.0);
  }
  return out;
}

}  // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix data, double defect)
    : data_(std::move(data)), defect_(defect) {}

HermitianMatrix HermitianMatrix::symmetrize(const ComplexMatrix& m) {
  if (!m.square()) throw NotSquareError("Hermitian matrix must be square");
  if (!m.all_finite()) throw NonFiniteError("Hermitian matrix has non-finite entries");
  return HermitianMatrix(symmetrized(m), hermiticity_defect_of(m));
}

HermitianMatrix validate_hermitian(const ComplexMatrix& m, double tol) {
  if (tol <= 0.0) throw Error("hermiticity tolerance must be positive");
  if (!m.square()) throw NotSquareError("Hermitian matrix must be square");
  if (!m.all_finite()) throw NonFiniteError("Hermitian matrix has non-finite entries");
  const double defect = hermiticity_defect_of(m);
  const double bound = tol * std::max(1.0, m.max_norm());
  if (defect > bound) {
    throw NotHermitianError("hermiticity defect " + std::to_string(defect) +
                            " exceeds tolerance " + std::to_string(bound));
  }
  return HermitianMatrix(symmetrized(m), defect);
}

ComplexMatrix BlockPartition::assemble() const {
  const std::size_t n = dim();
  ComplexMatrix out(n, n);
  out.set_block(0, 0, h_plus.matrix());
  out.set_block(0, k, v.adjoint());
  out.set_block(k, 0, v);
  out.set_block(k, k, h_minus.matrix());
  return out;
}

BlockPartition block_split(const HermitianMatrix& h, std::size_t k) {
  const std::size_t n = h.dim();
  if (k < 1 || k >= n) {
    throw BadSplitIndexError("split index must satisfy 1 <= k <= n-1");
  }
  const ComplexMatrix& m = h.matrix();
  return BlockPartition{
      k,
      HermitianMatrix::symmetrize(m.block(0, 0, k, k)),
      HermitianMatrix::symmetrize(m.block(k, k, n - k, n - k)),
      m.block(k, 0, n - k, k),
  };
}

GrassmannCoordinate::GrassmannCoordinate(ComplexMatrix z_in) : z(std::move(z_in)) {
  if (!z.all_finite()) throw NonFiniteError("chart coordinate has non-finite entries");
}

bool GrassmannCoordinate::is_zero(double eps) const { return z.max_norm() <= eps; }

UnitaryFactor::UnitaryFactor(ComplexMatrix u) : u_(std::move(u)), defect_(0.0) {
  if (!u_.square()) throw NotSquareError("unitary factor must be square");
  defect_ = max_abs_diff(u_.adjoint() * u_, ComplexMatrix::identity(u_.rows()));
  if (defect_ > 1e-10 * static_cast<double>(u_.rows())) {
    throw UnitarityError("unitarity defect " + std::to_string(defect_) + " too large");
  }
}

}  // namespace riccati

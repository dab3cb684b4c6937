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

#include "riccati/grassmann.hpp"

#include <cmath>
#include <utility>

#include "riccati/oracle.hpp"

namespace riccati {

namespace {

// Q f(Lambda) Q^dagger for a Hermitian PD matrix, with f = lambda^{-1/2}.
ComplexMatrix inv_sqrt_pd(const ComplexMatrix& gram) {
  oracle::EigenDecomposition eig = oracle::hermitian_eigen(gram, 1e-14);
  const std::size_t n = gram.rows();
  ComplexMatrix scaled(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double f = 1.0 / std::sqrt(eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) = eig.vectors(i, j) * f;
  }
  ComplexMatrix out = scaled * eig.vectors.adjoint();
  return HermitianMatrix::symmetrize(out).matrix();
}

ComplexMatrix mirror_block(const GrassmannCoordinate& z) {
  // U_M = [[1_k, -Z^dagger], [Z, 1_{n-k}]].
  const std::size_t k = z.z.cols();
  const std::size_t nk = z.z.rows();
  ComplexMatrix um = ComplexMatrix::identity(k + nk);
  ComplexMatrix minus_zadj = z.z.adjoint();
  minus_zadj *= cdouble(-1.0, 0.0);
  um.set_block(0, k, minus_zadj);
  um.set_block(k, 0, z.z);
  return um;
}

UnitaryFactor chart_unitary(const GrassmannCoordinate& z) {
  const std::size_t k = z.z.cols();
  auto [inv_small, inv_large] = inv_sqrt_gram(z);
  ComplexMatrix ud(z.chart_dim(), z.chart_dim());
  ud.set_block(0, 0, inv_small);
  ud.set_block(k, k, inv_large);
  return UnitaryFactor(mirror_block(z) * ud);
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> inv_sqrt_gram(const GrassmannCoordinate& z) {
  const std::size_t k = z.z.cols();
  const std::size_t nk = z.z.rows();
  ComplexMatrix gram_small = z.z.adjoint() * z.z;
  for (std::size_t i = 0; i < k; ++i) gram_small(i, i) += 1.0;
  ComplexMatrix gram_large = z.z * z.z.adjoint();
  for (std::size_t i = 0; i < nk; ++i) gram_large(i, i) += 1.0;
  return {inv_sqrt_pd(gram_small), inv_sqrt_pd(gram_large)};
}

UnitaryFactor build_unitary(const BlockPartition& part, const GrassmannCoordinate& z) {
  if (z.z.rows() != part.h_minus.dim() || z.z.cols() != part.k) {
    throw ShapeMismatchError("chart coordinate does not fit the partition");
  }
  return chart_unitary(z);
}

ComplexMatrix grassmann_projector(const GrassmannCoordinate& z) {
  const std::size_t k = z.z.cols();
  const std::size_t n = z.chart_dim();
  const ComplexMatrix u = chart_unitary(z).matrix();
  ComplexMatrix p0(n, n);
  for (std::size_t i = 0; i < k; ++i) p0(i, i) = 1.0;
  return u * p0 * u.adjoint();
}

HermitianMatrix conjugate(const HermitianMatrix& h, const UnitaryFactor& u) {
  if (h.dim() != u.dim()) throw ShapeMismatchError("conjugation dimension mismatch");
  return HermitianMatrix::symmetrize(u.matrix().adjoint() * h.matrix() * u.matrix());
}

}  // namespace riccati

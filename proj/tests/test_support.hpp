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

#include <cmath>
#include <random>
#include <vector>

#include "riccati/hermitian.hpp"

namespace riccati::testing {

inline cdouble random_entry(std::mt19937_64& rng, double half_width = 1.0) {
  std::uniform_real_distribution<double> dist(-half_width, half_width);
  return cdouble(dist(rng), dist(rng));
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols,
                                   std::mt19937_64& rng, double half_width = 1.0) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_entry(rng, half_width);
  return m;
}

inline HermitianMatrix random_hermitian(std::size_t n, std::mt19937_64& rng,
                                        double half_width = 1.0) {
  return HermitianMatrix::symmetrize(random_matrix(n, n, rng, half_width));
}

// Product of random complex Givens rotations; unitary by construction and
// independent of any eigensolver.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  ComplexMatrix u = ComplexMatrix::identity(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double theta = angle(rng);
      const double phi = angle(rng);
      const double c = std::cos(theta);
      const cdouble s = std::polar(std::sin(theta), phi);
      for (std::size_t i = 0; i < n; ++i) {
        const cdouble up = u(i, p);
        const cdouble uq = u(i, q);
        u(i, p) = c * up + s * uq;
        u(i, q) = -std::conj(s) * up + c * uq;
      }
    }
  }
  return u;
}

// Hermitian matrix with a prescribed spectrum drawn uniformly from
// [lo, hi], conjugated by a random unitary.
inline HermitianMatrix hermitian_with_spectrum(std::size_t n, double lo, double hi,
                                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(lo, hi);
  const ComplexMatrix q = random_unitary(n, rng);
  ComplexMatrix scaled(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lambda = dist(rng);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) = q(i, j) * lambda;
  }
  return HermitianMatrix::symmetrize(scaled * q.adjoint());
}

// Gapped block instance: spec(H_minus) in [-3, -1], spec(H_plus) in [1, 3].
inline HermitianMatrix gapped_hermitian(std::size_t n, std::size_t k,
                                        std::mt19937_64& rng, double v_scale = 0.5) {
  const HermitianMatrix hp = hermitian_with_spectrum(k, 1.0, 3.0, rng);
  const HermitianMatrix hm = hermitian_with_spectrum(n - k, -3.0, -1.0, rng);
  ComplexMatrix h(n, n);
  h.set_block(0, 0, hp.matrix());
  h.set_block(k, k, hm.matrix());
  const ComplexMatrix v = random_matrix(n - k, k, rng, v_scale);
  h.set_block(k, 0, v);
  h.set_block(0, k, v.adjoint());
  return HermitianMatrix::symmetrize(h);
}

inline std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace riccati::testing

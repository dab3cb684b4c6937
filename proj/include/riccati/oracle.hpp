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

#include <optional>
#include <vector>

#include "riccati/hermitian.hpp"

// Classical baseline used to verify the Riccati pipeline: characteristic
// polynomial, companion-matrix roots, a complex Jacobi eigensolver and a
// vectorized Sylvester solve. None of it reuses pipeline code beyond the
// dense matrix arithmetic.
namespace riccati::oracle {

/// Monic characteristic polynomial, degree n:
/// p(lambda) = lambda^n + coeffs[0] lambda^{n-1} + ... + coeffs[n-1].
/// For Hermitian input every coefficient is real up to rounding.
struct CharPoly {
  std::vector<cdouble> coeffs;

  std::size_t degree() const { return coeffs.size(); }
  cdouble eval(cdouble x) const;
  cdouble eval_derivative(cdouble x) const;
  double max_imag_residue() const;
};

/// Faddeev-LeVerrier trace recursion; exact in exact arithmetic and cheap at
/// desk scale. Throws TooLargeError for n > 12.
CharPoly char_poly(const HermitianMatrix& h);

/// All roots of a monic polynomial: shifted QR on the companion matrix with
/// Newton polishing against the polynomial itself.
std::vector<cdouble> poly_roots(const CharPoly& p);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::optional<UnitaryFactor> rotations;
};

/// Classical complex Jacobi: keep zeroing the largest off-diagonal entry
/// with a plane rotation until ||offdiag||_max <= tol * ||H||_max.
/// Unconditionally convergent for Hermitian input; iteration cap 50 n^2.
Spectrum jacobi_eigensolve(const HermitianMatrix& h, double tol = 1e-13,
                           bool want_vectors = true);

/// Eigendecomposition behind jacobi_eigensolve, exposed for callers that
/// need the raw (values, vectors) pair of an already-Hermitian matrix.
struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns; H = Q diag(values) Q^dagger
};
EigenDecomposition hermitian_eigen(const ComplexMatrix& herm, double tol = 1e-13);

/// Solve Z H_plus - H_minus Z = V by brute force (vectorization + Gaussian
/// elimination). No gap condition needed; throws SingularOperatorError when
/// H_plus and H_minus share an eigenvalue.
ComplexMatrix sylvester_bruteforce(const BlockPartition& part);

}  // namespace riccati::oracle

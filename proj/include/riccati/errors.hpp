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

#include <stdexcept>
#include <string>
#include <vector>

namespace riccati {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSquareError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class BadSplitIndexError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class NoSpectralGapError : public Error {
 public:
  using Error::Error;
};

class SingularVError : public Error {
 public:
  using Error::Error;
};

class SingularShiftError : public Error {
 public:
  using Error::Error;
};

class SingularLinearizationError : public Error {
 public:
  using Error::Error;
};

class SingularOperatorError : public Error {
 public:
  using Error::Error;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

class DegenerateAllZeroError : public Error {
 public:
  using Error::Error;
};

class FullyDegenerateError : public Error {
 public:
  using Error::Error;
};

class NoValidPairError : public Error {
 public:
  using Error::Error;
};

class ResidualTooLargeError : public Error {
 public:
  using Error::Error;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

/// Unitarity defect of a freshly built factor exceeded its bound.
class UnitarityError : public Error {
 public:
  using Error::Error;
};

/// An iterative solve gave up. Carries the best residual seen and, for the
/// full diagonalization driver, whatever eigenvalues were already peeled.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual(best_residual) {}
  NoConvergenceError(const std::string& what, double best_residual,
                     std::vector<double> partial_eigenvalues, int failed_step)
      : Error(what),
        best_residual(best_residual),
        partial_eigenvalues(std::move(partial_eigenvalues)),
        failed_step(failed_step) {}

  double best_residual = 0.0;
  std::vector<double> partial_eigenvalues;
  int failed_step = -1;
};

}  // namespace riccati

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

#include "riccati/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "riccati/errors.hpp"

namespace riccati {

bool is_finite(cdouble value) {
  return std::isfinite(value.real()) && std::isfinite(value.imag());
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cdouble(0.0, 0.0)) {
  if (rows == 0 || cols == 0) {
    throw Error("matrix dimensions must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw Error("matrix dimensions must be positive");
  }
  if (entries_.size() != rows * cols) {
    throw ShapeMismatchError("entry count does not match rows * cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

cdouble ComplexMatrix::trace() const {
  if (!square()) throw NotSquareError("trace of a non-square matrix");
  cdouble t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_norm() const {
  double m = 0.0;
  for (const cdouble& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cdouble& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

double ComplexMatrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const cdouble& e) { return is_finite(e); });
}

ComplexMatrix ComplexMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                                   std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) {
    throw ShapeMismatchError("block exceeds matrix bounds");
  }
  ComplexMatrix out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

void ComplexMatrix::set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b) {
  if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_) {
    throw ShapeMismatchError("block exceeds matrix bounds");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatchError("operator+= shape");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatchError("operator-= shape");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scalar) {
  for (cdouble& e : entries_) e *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw ShapeMismatchError("matrix product shape");
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t l = 0; l < lhs.cols(); ++l) {
      const cdouble a = lhs(i, l);
      if (a == cdouble(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(l, j);
    }
  }
  return out;
}

ComplexMatrix operator*(cdouble scalar, ComplexMatrix m) {
  m *= scalar;
  return m;
}

ComplexMatrix operator*(ComplexMatrix m, cdouble scalar) {
  m *= scalar;
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatchError("max_abs_diff shape");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

ComplexMatrix lu_solve(ComplexMatrix a, ComplexMatrix b) {
  if (!a.square()) throw NotSquareError("lu_solve needs a square system");
  if (a.rows() != b.rows()) throw ShapeMismatchError("lu_solve right-hand side shape");
  const std::size_t n = a.rows();
  const double scale = a.max_norm();
  const double pivot_floor = scale * static_cast<double>(n) * 1e-15;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    double pivot_mag = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (pivot_mag <= pivot_floor) {
      throw SingularMatrixError("pivot collapsed during elimination");
    }
    if (pivot_row != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot_row, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(pivot_row, j));
    }
    const cdouble pivot = a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cdouble factor = a(r, col) / pivot;
      if (factor == cdouble(0.0, 0.0)) continue;
      a(r, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= factor * b(col, j);
    }
  }

  for (std::size_t ri = n; ri-- > 0;) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cdouble s = b(ri, j);
      for (std::size_t l = ri + 1; l < n; ++l) s -= a(ri, l) * b(l, j);
      b(ri, j) = s / a(ri, ri);
    }
  }
  return b;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return lu_solve(a, ComplexMatrix::identity(a.rows()));
}

double condition_1norm(const ComplexMatrix& a) {
  try {
    return a.one_norm() * inverse(a).one_norm();
  } catch (const SingularMatrixError&) {
    return std::numeric_limits<double>::infinity();
  }
}

ComplexMatrix solve_commutator_system(const ComplexMatrix& p, const ComplexMatrix& q,
                                      const ComplexMatrix& c) {
  const std::size_t rows = c.rows();
  const std::size_t cols = c.cols();
  if (!p.square() || p.rows() != cols) throw ShapeMismatchError("right factor shape");
  if (!q.square() || q.rows() != rows) throw ShapeMismatchError("left factor shape");

  // Row-major vec: x[i*cols + j] = X(i, j).
  const std::size_t dim = rows * cols;
  ComplexMatrix system(dim, dim);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t r = i * cols + j;
      for (std::size_t l = 0; l < cols; ++l) system(r, i * cols + l) += p(l, j);
      for (std::size_t m = 0; m < rows; ++m) system(r, m * cols + j) += q(i, m);
    }
  }
  ComplexMatrix rhs(dim, 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) rhs(i * cols + j, 0) = c(i, j);

  ComplexMatrix xvec = lu_solve(std::move(system), std::move(rhs));
  ComplexMatrix x(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) x(i, j) = xvec(i * cols + j, 0);
  return x;
}

}  // namespace riccati

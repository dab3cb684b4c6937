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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "riccati/hermitian.hpp"

namespace riccati::cli {

/// A matrix file failed to parse or to satisfy the schema. The message
/// carries the parser's line/column diagnostics where available.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// On-disk format: a JSON object with "n" and an n x n "entries" array of
/// [re, im] pairs, plus optional "label", "tol" and "hermiticity_tol".
struct MatrixFile {
  std::size_t n;
  ComplexMatrix entries;
  std::string label;
  std::optional<double> tol;
  std::optional<double> hermiticity_tol;
};

MatrixFile parse_matrix_file(const std::string& path);

/// FNV-1a 64 over the canonical serialization of (n, entries); hex string.
std::string matrix_digest(const MatrixFile& mf);

/// The whole command-line tool behind a callable surface so tests can drive
/// it in-process. `args` excludes the program name. Returns the exit code:
/// 0 ok, 1 parse error, 2 not Hermitian, 3 no convergence, 4 no spectral
/// gap, 64 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riccati::cli

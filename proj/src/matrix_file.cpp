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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "riccati/cli.hpp"

namespace riccati::cli {

namespace {

using nlohmann::json;

double require_finite_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + ": non-finite value");
  return v;
}

}  // namespace

MatrixFile parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_unsigned()) {
    throw ParseError("missing or invalid \"n\"");
  }
  const std::size_t n = doc["n"].get<std::size_t>();
  if (n < 1) throw ParseError("\"n\" must be positive");
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError("missing or invalid \"entries\"");
  }
  const json& rows = doc["entries"];
  if (rows.size() != n) {
    throw ParseError("\"entries\" has " + std::to_string(rows.size()) + " rows, expected " +
                     std::to_string(n));
  }

  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError("row " + std::to_string(i) + " must hold " + std::to_string(n) +
                       " [re, im] pairs");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const json& cell = row[j];
      const std::string where =
          "entry (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      if (!cell.is_array() || cell.size() != 2) {
        throw ParseError(where + ": expected a [re, im] pair");
      }
      m(i, j) = cdouble(require_finite_number(cell[0], where + " re"),
                        require_finite_number(cell[1], where + " im"));
    }
  }

  MatrixFile out{n, std::move(m), "", std::nullopt, std::nullopt};
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ParseError("\"label\" must be a string");
    out.label = doc["label"].get<std::string>();
  }
  if (doc.contains("tol")) {
    const double t = require_finite_number(doc["tol"], "\"tol\"");
    if (t <= 0.0) throw ParseError("\"tol\" must be positive");
    out.tol = t;
  }
  if (doc.contains("hermiticity_tol")) {
    const double t = require_finite_number(doc["hermiticity_tol"], "\"hermiticity_tol\"");
    if (t <= 0.0) throw ParseError("\"hermiticity_tol\" must be positive");
    out.hermiticity_tol = t;
  }
  return out;
}

std::string matrix_digest(const MatrixFile& mf) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](const std::string& s) {
    for (const char c : s) {
      hash ^= static_cast<unsigned char>(c);
      hash *= 0x100000001b3ULL;
    }
  };
  char buf[64];
  std::snprintf(buf, sizeof(buf), "n:%zu;", mf.n);
  feed(buf);
  for (std::size_t i = 0; i < mf.n; ++i) {
    for (std::size_t j = 0; j < mf.n; ++j) {
      const cdouble e = mf.entries(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g;", e.real(), e.imag());
      feed(buf);
    }
  }
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace riccati::cli

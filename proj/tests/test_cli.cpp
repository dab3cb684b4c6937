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

#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "riccati/cli.hpp"
#include "riccati/riccati_solver.hpp"

using namespace riccati;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("riccati_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name, const std::string& body) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << body;
    return p;
  }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

const char* kDiag312 = R"({
  "n": 3,
  "entries": [[[3,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[2,0]]]
})";

const char* kWorked = R"({
  "n": 3,
  "label": "worked",
  "entries": [[[2,0],[0,0],[1,0]], [[0,0],[3,0],[1,0]], [[1,0],[1,0],[4,0]]]
})";

const char* kGapless = R"({
  "n": 2,
  "entries": [[[0,0],[1,0]], [[1,0],[2,0]]]
})";

}  // namespace

TEST_CASE("matrix file parsing") {
  TempDir tmp;
  const auto good = tmp.file("good.json", kWorked);
  const cli::MatrixFile mf = cli::parse_matrix_file(good.string());
  CHECK(mf.n == 3);
  CHECK(mf.label == "worked");
  CHECK(mf.entries(2, 0) == cdouble(1.0, 0.0));
  CHECK(cli::matrix_digest(mf) == cli::matrix_digest(mf));

  const auto bad = tmp.file("bad.json", "{ \"n\": 2, entries: oops");
  CHECK_THROWS_AS(cli::parse_matrix_file(bad.string()), cli::ParseError);

  const auto short_row = tmp.file("short.json", R"({"n":2,"entries":[[[1,0]],[[0,0],[1,0]]]})");
  CHECK_THROWS_AS(cli::parse_matrix_file(short_row.string()), cli::ParseError);

  CHECK_THROWS_AS(cli::parse_matrix_file((tmp.path / "missing.json").string()),
                  cli::ParseError);
}

TEST_CASE("diagonalize prints ascending eigenvalues and a report") {
  TempDir tmp;
  const auto file = tmp.file("diag.json", kDiag312);
  const RunResult r = run({"diagonalize", file.string()});
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 5);
  CHECK(lines[0] == "1");
  CHECK(lines[1] == "2");
  CHECK(lines[2] == "3");
  CHECK(lines[3].rfind("report: ", 0) == 0);
  CHECK(lines[4].rfind("timing_ms: ", 0) == 0);
}

TEST_CASE("diagonalize matches the worked characteristic polynomial") {
  TempDir tmp;
  const auto file = tmp.file("worked.json", kWorked);
  for (const std::string method : {"reduction", "cubic3", "flag"}) {
    const RunResult r = run({"diagonalize", file.string(), "--method", method});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    std::vector<double> vals;
    for (int i = 0; i < 3; ++i) vals.push_back(std::stod(lines[i]));
    // lambda^3 - 9 lambda^2 + 24 lambda - 19 at each printed eigenvalue.
    for (const double v : vals) {
      CHECK(std::abs(((v - 9.0) * v + 24.0) * v - 19.0) < 1e-8);
    }
  }
}

TEST_CASE("exit codes") {
  TempDir tmp;
  const auto malformed = tmp.file("malformed.json", "{\"n\": 2, \"entries\": [[[1,0]");
  const RunResult bad = run({"diagonalize", malformed.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line") != std::string::npos);  // parser line/column diagnostics

  const auto nonherm = tmp.file(
      "nonherm.json", R"({"n":2,"entries":[[[0,0],[0,1]],[[0,1],[0,0]]]})");
  CHECK(run({"diagonalize", nonherm.string()}).code == 2);

  const auto gapless = tmp.file("gapless.json", kGapless);
  CHECK(run({"riccati", gapless.string(), "--split", "1", "--method", "sylvester"}).code ==
        4);

  CHECK(run({"riccati", gapless.string(), "--split", "0"}).code == 64);
  CHECK(run({"diagonalize"}).code == 64);
  CHECK(run({"nonsense"}).code == 64);

  const auto empty = tmp.file("empty.json", "");
  CHECK(run({"oracle", empty.string()}).code == 1);
}

TEST_CASE("oracle on a 2x2 file matches the closed form") {
  TempDir tmp;
  const double h1 = 1.25, h2 = -0.75;
  const cdouble alpha(0.5, -1.1);
  char body[256];
  std::snprintf(body, sizeof(body),
                R"({"n":2,"entries":[[[%.17g,0],[%.17g,%.17g]],[[%.17g,%.17g],[%.17g,0]]]})",
                h1, alpha.real(), -alpha.imag(), alpha.real(), alpha.imag(), h2);
  const auto file = tmp.file("two.json", body);
  const RunResult r = run({"oracle", file.string()});
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  const double mid = 0.5 * (h1 + h2);
  const double rad = std::sqrt(0.25 * (h1 - h2) * (h1 - h2) + std::norm(alpha));
  CHECK(std::stod(lines[0]) == doctest::Approx(mid - rad).epsilon(1e-12));
  CHECK(std::stod(lines[1]) == doctest::Approx(mid + rad).epsilon(1e-12));
}

TEST_CASE("oracle --compare reports a small deviation") {
  TempDir tmp;
  const auto file = tmp.file("worked.json", kWorked);
  const RunResult r = run({"oracle", file.string(), "--compare"});
  CHECK(r.code == 0);
  double dev = -1.0;
  for (const std::string& line : lines_of(r.out)) {
    if (line.rfind("compare_deviation: ", 0) == 0) dev = std::stod(line.substr(19));
  }
  CHECK(dev >= 0.0);
  CHECK(dev < 1e-8);
}

TEST_CASE("reports are byte-identical across runs") {
  TempDir tmp;
  const auto file = tmp.file("worked.json", kWorked);
  auto report_line = [&](const RunResult& r) {
    for (const std::string& line : lines_of(r.out)) {
      if (line.rfind("report: ", 0) == 0) return line;
    }
    return std::string();
  };
  const std::string first = report_line(run({"diagonalize", file.string()}));
  const std::string second = report_line(run({"diagonalize", file.string()}));
  CHECK(!first.empty());
  CHECK(first == second);
}

TEST_CASE("riccati --json round-trips Z against its reported residual") {
  TempDir tmp;
  const auto file = tmp.file(
      "gapped.json",
      R"({"n":3,"entries":[[[3,0],[0,0],[0.4,-0.1]],[[0,0],[4,0],[0.3,0.2]],[[0.4,0.1],[0.3,-0.2],[-2,0]]]})");
  const RunResult r = run({"riccati", file.string(), "--split", "2", "--json"});
  REQUIRE(r.code == 0);
  const nlohmann::json rep = nlohmann::json::parse(r.out);
  REQUIRE(rep.contains("z"));

  const auto& zj = rep["z"];
  ComplexMatrix z(zj.size(), zj[0].size());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j)
      z(i, j) = cdouble(zj[i][j][0].get<double>(), zj[i][j][1].get<double>());

  const cli::MatrixFile mf = cli::parse_matrix_file(file.string());
  const BlockPartition part = block_split(validate_hermitian(mf.entries), 2);
  const double recomputed =
      solver::riccati_residual(GrassmannCoordinate{z}, part).max_norm();
  CHECK(std::abs(recomputed - rep["residual"].get<double>()) < 1e-12);
}

TEST_CASE("batch mode walks files in filename order") {
  TempDir tmp;
  tmp.file("b.json", kDiag312);
  tmp.file("a.json", kWorked);
  const RunResult r = run({"diagonalize", "--batch", tmp.path.string()});
  CHECK(r.code == 0);
  const std::size_t pos_a = r.out.find("a.json");
  const std::size_t pos_b = r.out.find("b.json");
  REQUIRE(pos_a != std::string::npos);
  REQUIRE(pos_b != std::string::npos);
  CHECK(pos_a < pos_b);
}

TEST_CASE("bench runs") {
  TempDir tmp;
  const auto file = tmp.file("worked.json", kWorked);
  const RunResult r = run({"bench", file.string(), "--repeat", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("riccati_ms") != std::string::npos);
}

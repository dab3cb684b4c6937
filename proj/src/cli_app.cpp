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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riccati/cli.hpp"
#include "riccati/cubic3.hpp"
#include "riccati/errors.hpp"
#include "riccati/flag.hpp"
#include "riccati/grassmann.hpp"
#include "riccati/oracle.hpp"
#include "riccati/reduction.hpp"
#include "riccati/riccati_solver.hpp"

namespace riccati::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNotHermitian = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitNoGap = 4;
constexpr int kExitUsage = 64;

struct Options {
  std::string command;
  std::string path;
  std::string batch_dir;
  std::string method;
  double tol = 1e-10;
  double hermiticity_tol = kDefaultHermiticityTol;
  bool json_output = false;
  bool compare = false;
  std::size_t split = 0;
  int repeat = 20;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Outcome {
  int exit_code = kExitOk;
  ordered_json report;
  std::vector<std::string> lines;  // human-readable body, printed before the report
};

HermitianMatrix load_hermitian(const MatrixFile& mf, const Options& opt) {
  const double tol = mf.hermiticity_tol.value_or(opt.hermiticity_tol);
  return validate_hermitian(mf.entries, tol);
}

ordered_json base_report(const Options& opt, const MatrixFile& mf,
                         const std::string& path) {
  ordered_json rep;
  rep["command"] = opt.command;
  rep["path"] = path;
  rep["digest"] = matrix_digest(mf);
  if (!mf.label.empty()) rep["label"] = mf.label;
  rep["n"] = mf.n;
  return rep;
}

void push_eigenvalues(Outcome& out, const std::vector<double>& vals) {
  for (const double v : vals) out.lines.push_back(fmt(v));
}

Outcome run_diagonalize(const Options& opt, const MatrixFile& mf, const std::string& path) {
  Outcome out;
  out.report = base_report(opt, mf, path);
  const HermitianMatrix h = load_hermitian(mf, opt);
  const double tol = mf.tol.value_or(opt.tol);
  out.report["method"] = opt.method;

  if (opt.method == "reduction") {
    try {
      const reduction::DiagonalizationResult res = reduction::riccati_diagonalize(h, tol);
      push_eigenvalues(out, res.eigenvalues);
      out.report["eigenvalues"] = res.eigenvalues;
      out.report["max_offdiag"] = res.max_offdiag;
      ordered_json steps = ordered_json::array();
      for (const auto& s : res.steps) {
        steps.push_back({{"index", s.step_index},
                         {"eigenvalue", s.eigenvalue},
                         {"residual", s.residual_norm}});
      }
      out.report["steps"] = std::move(steps);
      out.report["status"] = "ok";
    } catch (const NoConvergenceError& e) {
      out.report["status"] = "noconvergence";
      out.report["best_residual"] = e.best_residual;
      out.report["partial_eigenvalues"] = e.partial_eigenvalues;
      out.exit_code = kExitNoConvergence;
    }
  } else if (opt.method == "cubic3") {
    const cubic3::Triple t = cubic3::eigenvalues_3x3(h);
    std::vector<double> vals{t.lambda1, t.lambda2, t.lambda3};
    std::sort(vals.begin(), vals.end());
    push_eigenvalues(out, vals);
    out.report["eigenvalues"] = vals;
    out.report["status"] = "ok";
  } else {  // flag
    const flag::FlagSolveResult res = flag::flag_solve(h, tol);
    out.report["residual"] = res.residual_norm;
    out.report["iterations"] = res.iterations;
    if (res.converged) {
      const HermitianMatrix w = conjugate(h, flag::build_flag_unitary(res.coordinate));
      std::vector<double> vals{w.diagonal(0), w.diagonal(1), w.diagonal(2)};
      std::sort(vals.begin(), vals.end());
      double offdiag = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (i != j) offdiag = std::max(offdiag, std::abs(w.matrix()(i, j)));
      push_eigenvalues(out, vals);
      out.report["eigenvalues"] = vals;
      out.report["max_offdiag"] = offdiag;
      out.report["status"] = "ok";
    } else {
      out.report["status"] = "noconvergence";
      out.exit_code = kExitNoConvergence;
    }
  }
  return out;
}

Outcome run_oracle(const Options& opt, const MatrixFile& mf, const std::string& path) {
  Outcome out;
  out.report = base_report(opt, mf, path);
  const HermitianMatrix h = load_hermitian(mf, opt);

  const oracle::Spectrum spec = oracle::jacobi_eigensolve(h);
  push_eigenvalues(out, spec.eigenvalues);
  out.report["eigenvalues"] = spec.eigenvalues;

  if (mf.n <= 12) {
    // Cross-check against the characteristic-polynomial route.
    const auto roots = oracle::poly_roots(oracle::char_poly(h));
    std::vector<double> real_roots;
    real_roots.reserve(roots.size());
    for (const cdouble& r : roots) real_roots.push_back(r.real());
    std::sort(real_roots.begin(), real_roots.end());
    double dev = 0.0;
    for (std::size_t i = 0; i < real_roots.size(); ++i) {
      dev = std::max(dev, std::abs(real_roots[i] - spec.eigenvalues[i]));
    }
    out.report["charpoly_deviation"] = dev;
    out.lines.push_back("charpoly_deviation: " + fmt(dev));
  }

  if (opt.compare) {
    const double tol = mf.tol.value_or(opt.tol);
    const reduction::DiagonalizationResult res = reduction::riccati_diagonalize(h, tol);
    double dev = 0.0;
    for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
      dev = std::max(dev, std::abs(res.eigenvalues[i] - spec.eigenvalues[i]));
    }
    out.report["compare_deviation"] = dev;
    out.lines.push_back("compare_deviation: " + fmt(dev));
  }
  out.report["status"] = "ok";
  return out;
}

Outcome run_riccati(const Options& opt, const MatrixFile& mf, const std::string& path) {
  Outcome out;
  out.report = base_report(opt, mf, path);
  const HermitianMatrix h = load_hermitian(mf, opt);
  if (opt.split < 1 || opt.split >= mf.n) {
    throw BadSplitIndexError("--split must satisfy 1 <= k <= n-1");
  }
  const BlockPartition part = block_split(h, opt.split);
  const double tol = mf.tol.value_or(opt.tol);
  out.report["method"] = opt.method;
  out.report["split"] = opt.split;

  std::optional<solver::RiccatiSolution> sol;
  if (opt.method == "sylvester") {
    sol.emplace(solver::sylvester_integral(part));
  } else if (opt.method == "approx2") {
    solver::RiccatiSolution seed = solver::spectral_gap_check(part)
                                       ? solver::sylvester_integral(part)
                                       : solver::RiccatiSolution{
                                             GrassmannCoordinate{ComplexMatrix(
                                                 mf.n - opt.split, opt.split)},
                                             0.0, solver::Method::kSylvesterInit, 0};
    sol.emplace(solver::approx_ii(part, seed.z));
  } else {  // newton
    GrassmannCoordinate seed{ComplexMatrix(mf.n - opt.split, opt.split)};
    try {
      if (solver::spectral_gap_check(part)) seed = solver::sylvester_integral(part).z;
    } catch (const NoSpectralGapError&) {
    }
    sol.emplace(solver::newton_refine(part, seed, tol, 80));
  }

  const auto blocks = solver::reduced_hamiltonians(part, sol->z);
  auto factors = inv_sqrt_gram(sol->z);
  const ComplexMatrix scaled_plus = factors.first * blocks.first.matrix() * factors.first;
  const ComplexMatrix scaled_minus =
      factors.second * blocks.second.matrix() * factors.second;

  out.report["z"] = matrix_to_json(sol->z.z);
  out.report["residual"] = sol->residual_norm;
  out.report["iterations"] = sol->iterations;
  out.report["block_plus"] = matrix_to_json(scaled_plus);
  out.report["block_minus"] = matrix_to_json(scaled_minus);
  out.report["status"] = "ok";

  out.lines.push_back("method: " + solver::method_name(sol->method));
  out.lines.push_back("residual: " + fmt(sol->residual_norm));
  for (std::size_t i = 0; i < sol->z.z.rows(); ++i) {
    std::string line = "z:";
    for (std::size_t j = 0; j < sol->z.z.cols(); ++j) {
      line += " [" + fmt(sol->z.z(i, j).real()) + "," + fmt(sol->z.z(i, j).imag()) + "]";
    }
    out.lines.push_back(std::move(line));
  }
  return out;
}

Outcome run_bench(const Options& opt, const MatrixFile& mf, const std::string& path) {
  Outcome out;
  out.report = base_report(opt, mf, path);
  const HermitianMatrix h = load_hermitian(mf, opt);
  const double tol = mf.tol.value_or(opt.tol);

  using clock = std::chrono::steady_clock;
  double riccati_ms = 0.0;
  double jacobi_ms = 0.0;
  double deviation = 0.0;
  for (int r = 0; r < opt.repeat; ++r) {
    const auto t0 = clock::now();
    const reduction::DiagonalizationResult res = reduction::riccati_diagonalize(h, tol);
    const auto t1 = clock::now();
    const oracle::Spectrum spec = oracle::jacobi_eigensolve(h);
    const auto t2 = clock::now();
    riccati_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    jacobi_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
      deviation = std::max(deviation,
                           std::abs(res.eigenvalues[i] - spec.eigenvalues[i]));
    }
  }
  riccati_ms /= opt.repeat;
  jacobi_ms /= opt.repeat;
  out.report["repeat"] = opt.repeat;
  out.report["riccati_ms"] = riccati_ms;
  out.report["jacobi_ms"] = jacobi_ms;
  out.report["deviation"] = deviation;
  out.report["status"] = "ok";
  out.lines.push_back("riccati_ms: " + fmt(riccati_ms));
  out.lines.push_back("jacobi_ms: " + fmt(jacobi_ms));
  out.lines.push_back("deviation: " + fmt(deviation));
  return out;
}

Outcome run_one(const Options& opt, const std::string& path, std::ostream& err) {
  Outcome out;
  MatrixFile mf{1, ComplexMatrix(1, 1), "", std::nullopt, std::nullopt};
  try {
    mf = parse_matrix_file(path);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitParse;
    return out;
  }

  try {
    if (opt.command == "diagonalize") return run_diagonalize(opt, mf, path);
    if (opt.command == "oracle") return run_oracle(opt, mf, path);
    if (opt.command == "riccati") return run_riccati(opt, mf, path);
    return run_bench(opt, mf, path);
  } catch (const NotHermitianError& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitNotHermitian;
  } catch (const NotSquareError& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitNotHermitian;
  } catch (const NonFiniteError& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitParse;
  } catch (const NoSpectralGapError& e) {
    err << "error: " << e.what() << "\n";
    out.report = base_report(opt, mf, path);
    out.report["status"] = "nospectralgap";
    out.exit_code = kExitNoGap;
  } catch (const BadSplitIndexError& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitUsage;
  } catch (const ShapeMismatchError& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitUsage;
  } catch (const SingularVError& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitNoConvergence;
  } catch (const SingularShiftError& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitNoConvergence;
  } catch (const NoConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    out.report = base_report(opt, mf, path);
    out.report["status"] = "noconvergence";
    out.report["best_residual"] = e.best_residual;
    out.exit_code = kExitNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    out.exit_code = kExitParse;
  }
  return out;
}

void emit(const Options& opt, Outcome& out, double elapsed_ms, std::ostream& os) {
  if (out.report.is_null()) return;
  out.report["exit_code"] = out.exit_code;
  if (opt.json_output) {
    out.report["timing_ms"] = elapsed_ms;
    os << out.report.dump(2) << "\n";
  } else {
    for (const std::string& line : out.lines) os << line << "\n";
    os << "report: " << out.report.dump() << "\n";
    os << "timing_ms: " << fmt(elapsed_ms) << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;

  CLI::App app{"Hermitian diagonalization by Grassmann charts and matrix Riccati equations"};
  app.require_subcommand(1);

  const std::vector<std::string> diag_methods{"reduction", "cubic3", "flag"};
  const std::vector<std::string> riccati_methods{"sylvester", "newton", "approx2"};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("path", opt.path, "matrix file (JSON)");
    sub->add_option("--tol", opt.tol, "residual tolerance (relative)");
    sub->add_option("--hermiticity-tol", opt.hermiticity_tol,
                    "hermiticity tolerance (relative)");
    sub->add_flag("--json", opt.json_output, "machine-readable report");
    sub->add_option("--batch", opt.batch_dir, "process every *.json in a directory");
  };

  CLI::App* diag = app.add_subcommand("diagonalize", "full pipeline; eigenvalues ascending");
  add_common(diag);
  opt.method = "reduction";
  diag->add_option("--method", opt.method, "reduction|cubic3|flag")
      ->check(CLI::IsMember(diag_methods));

  CLI::App* orac = app.add_subcommand("oracle", "classical Jacobi + characteristic polynomial");
  add_common(orac);
  orac->add_flag("--compare", opt.compare, "also run the pipeline and print the deviation");

  CLI::App* ricc = app.add_subcommand("riccati", "one Riccati solve at a given split");
  add_common(ricc);
  ricc->add_option("--split", opt.split, "split index k, 1 <= k <= n-1")->required();
  ricc->add_option("--method", opt.method, "sylvester|newton|approx2")
      ->check(CLI::IsMember(riccati_methods));

  CLI::App* bench = app.add_subcommand("bench", "time both pipelines on one file");
  add_common(bench);
  bench->add_option("--repeat", opt.repeat, "number of repetitions")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.push_back("riccati-diag");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (CLI::App* sub : {diag, orac, ricc, bench}) {
    if (sub->parsed()) opt.command = sub->get_name();
  }
  if (opt.command == "riccati") {
    if (opt.method != "sylvester" && opt.method != "newton" && opt.method != "approx2") {
      opt.method = "newton";
    }
    if (opt.split < 1) {
      err << "usage error: --split must be at least 1\n";
      return kExitUsage;
    }
  }

  std::vector<std::string> paths;
  if (!opt.batch_dir.empty()) {
    if (!opt.path.empty()) {
      err << "usage error: give either a path or --batch, not both\n";
      return kExitUsage;
    }
    std::error_code ec;
    std::filesystem::directory_iterator it(opt.batch_dir, ec);
    if (ec) {
      err << "error: cannot read directory '" << opt.batch_dir << "'\n";
      return kExitParse;
    }
    for (const auto& entry : it) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        paths.push_back(entry.path().string());
      }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
      err << "error: no .json files in '" << opt.batch_dir << "'\n";
      return kExitParse;
    }
  } else {
    if (opt.path.empty()) {
      err << "usage error: a matrix file is required\n";
      return kExitUsage;
    }
    paths.push_back(opt.path);
  }

  int exit_code = kExitOk;
  const bool json_batch = opt.json_output && paths.size() > 1;
  ordered_json batch_reports = ordered_json::array();
  for (const std::string& path : paths) {
    if (!opt.json_output && paths.size() > 1) out << "== " << path << "\n";
    const auto t0 = std::chrono::steady_clock::now();
    Outcome result = run_one(opt, path, err);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    if (json_batch) {
      if (!result.report.is_null()) {
        result.report["exit_code"] = result.exit_code;
        result.report["timing_ms"] = ms;
        batch_reports.push_back(std::move(result.report));
      }
    } else {
      emit(opt, result, ms, out);
    }
    exit_code = std::max(exit_code, result.exit_code);
  }
  if (json_batch) out << batch_reports.dump(2) << "\n";
  return exit_code;
}

}  // namespace riccati::cli

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

#include "riccati/flag.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "riccati/detail/splitmix.hpp"
#include "riccati/errors.hpp"
#include "riccati/reduction.hpp"

namespace riccati::flag {

namespace {

struct Entries3 {
  double h1, h2, h3;
  cdouble a, b, g;
};

Entries3 unpack(const HermitianMatrix& h) {
  if (h.dim() != 3) throw ShapeMismatchError("flag charts are specific to n = 3");
  const ComplexMatrix& m = h.matrix();
  return Entries3{h.diagonal(0), h.diagonal(1), h.diagonal(2), m(1, 0), m(2, 0), m(2, 1)};
}

std::array<double, 6> realify(const FlagResiduals& r) {
  return {r.w21.real(), r.w21.imag(), r.w31.real(),
          r.w31.imag(), r.w32.real(), r.w32.imag()};
}

FlagCoordinate from_vec(const std::array<double, 6>& u) {
  return FlagCoordinate{cdouble(u[0], u[1]), cdouble(u[2], u[3]), cdouble(u[4], u[5])};
}

std::array<double, 6> to_vec(const FlagCoordinate& c) {
  return {c.x.real(), c.x.imag(), c.y.real(), c.y.imag(), c.z.real(), c.z.imag()};
}

}  // namespace

double FlagCoordinate::delta1() const { return 1.0 + std::norm(x) + std::norm(y); }

double FlagCoordinate::delta2() const {
  return 1.0 + std::norm(z) + std::norm(x * z - y);
}

double FlagResiduals::max_abs() const {
  return std::max({std::abs(w21), std::abs(w31), std::abs(w32)});
}

UnitaryFactor build_flag_unitary(const FlagCoordinate& c) {
  const double d1 = c.delta1();
  const double d2 = c.delta2();
  const cdouble t = std::conj(c.x) + std::conj(c.y) * c.z;

  ComplexMatrix um(3, 3);
  um(0, 0) = 1.0;
  um(1, 0) = c.x;
  um(2, 0) = c.y;
  um(0, 1) = -t;
  um(1, 1) = d1 - c.x * t;
  um(2, 1) = c.z * d1 - c.y * t;
  um(0, 2) = std::conj(c.x) * std::conj(c.z) - std::conj(c.y);
  um(1, 2) = -std::conj(c.z);
  um(2, 2) = 1.0;

  ComplexMatrix ud(3, 3);
  ud(0, 0) = 1.0 / std::sqrt(d1);
  ud(1, 1) = 1.0 / std::sqrt(d1 * d2);
  ud(2, 2) = 1.0 / std::sqrt(d2);
  return UnitaryFactor(um * ud);
}

FlagResiduals flag_residuals(const FlagCoordinate& c, const HermitianMatrix& h) {
  const Entries3 e = unpack(h);
  const double d1 = c.delta1();
  const cdouble x = c.x, y = c.y, z = c.z;

  // Columns of H against (1, x, y): the three recurring brackets.
  const cdouble t1 = e.h1 + x * std::conj(e.a) + y * std::conj(e.b);
  const cdouble t2 = e.a + x * e.h2 + y * std::conj(e.g);
  const cdouble t3 = e.b + x * e.g + y * e.h3;

  const cdouble xyz = x + y * std::conj(z);
  const cdouble w21 = -xyz * t1 + (d1 - std::conj(x) * xyz) * t2 +
                      (std::conj(z) * d1 - std::conj(y) * xyz) * t3;
  const cdouble w31 = (x * z - y) * t1 - z * t2 + t3;
  const cdouble w32 =
      -(std::conj(x) + std::conj(y) * z) * w31 +
      d1 * (((x * z - y) * std::conj(e.a) - z * e.h2 + e.g) +
            ((x * z - y) * std::conj(e.b) - z * std::conj(e.g) + e.h3) * z);
  return FlagResiduals{w21, w31, w32};
}

FlagSolveResult flag_solve(const HermitianMatrix& h, double tol, int max_iter) {
  unpack(h);  // shape gate
  const double scale = std::max(1.0, h.matrix().max_norm());
  const double target = tol * scale;

  std::vector<FlagCoordinate> seeds;

  // The pipeline's eigenvectors map straight into the chart: the first
  // column is (1, x, y) up to scale and the third is (conj(x z - y)..., -conj(z), 1),
  // so any eigenvector pair with usable denominators gives a seed that is
  // already an exact root when the charts are valid.
  try {
    const reduction::DiagonalizationResult base = reduction::riccati_diagonalize(h);
    const ComplexMatrix& u = base.unitary.matrix();
    const std::array<std::pair<int, int>, 6> picks = {
        {{0, 2}, {0, 1}, {1, 2}, {1, 0}, {2, 0}, {2, 1}}};
    for (const auto& [first_col, third_col] : picks) {
      const cdouble head = u(0, first_col);
      const cdouble tail = u(2, third_col);
      if (std::abs(head) < 1e-8 || std::abs(tail) < 1e-8) continue;
      const FlagCoordinate cand{u(1, first_col) / head, u(2, first_col) / head,
                                -std::conj(u(1, third_col) / tail)};
      if (std::abs(cand.x) > 1e8 || std::abs(cand.y) > 1e8 || std::abs(cand.z) > 1e8) {
        continue;
      }
      seeds.push_back(cand);
    }
  } catch (const NoConvergenceError&) {
  }

  seeds.push_back(FlagCoordinate{0.0, 0.0, 0.0});
  detail::SplitMix64 rng{reduction::ladder_seed() ^ 0x0F1A6ULL};
  for (int i = 0; i < 8; ++i) {
    seeds.push_back(FlagCoordinate{rng.disc_entry(), rng.disc_entry(), rng.disc_entry()});
  }

  auto residual_of = [&](const FlagCoordinate& c) { return flag_residuals(c, h); };

  FlagCoordinate best_coord = seeds.front();
  double best_norm = std::numeric_limits<double>::infinity();
  int used_iterations = 0;

  for (const FlagCoordinate& seed : seeds) {
    std::array<double, 6> u = to_vec(seed);
    FlagResiduals res = residual_of(from_vec(u));
    double norm = res.max_abs();
    if (norm < best_norm) {
      best_norm = norm;
      best_coord = from_vec(u);
    }

    for (int it = 0; it < max_iter && norm > target; ++it) {
      ++used_iterations;
      // Central finite-difference Jacobian of the real-ified system.
      double umax = 1.0;
      for (double v : u) umax = std::max(umax, std::abs(v));
      const double step = 1e-6 * umax;

      ComplexMatrix jac(6, 6);
      for (int j = 0; j < 6; ++j) {
        std::array<double, 6> up = u;
        std::array<double, 6> dn = u;
        up[j] += step;
        dn[j] -= step;
        const std::array<double, 6> rp = realify(residual_of(from_vec(up)));
        const std::array<double, 6> rm = realify(residual_of(from_vec(dn)));
        for (int i = 0; i < 6; ++i) jac(i, j) = (rp[i] - rm[i]) / (2.0 * step);
      }
      ComplexMatrix rhs(6, 1);
      const std::array<double, 6> rv = realify(res);
      for (int i = 0; i < 6; ++i) rhs(i, 0) = -rv[i];

      std::array<double, 6> delta{};
      try {
        const ComplexMatrix sol = lu_solve(std::move(jac), std::move(rhs));
        for (int i = 0; i < 6; ++i) delta[i] = sol(i, 0).real();
      } catch (const SingularMatrixError&) {
        break;
      }

      double damping = 1.0;
      bool improved = false;
      while (damping > 1.0 / 4096.0) {
        std::array<double, 6> next = u;
        for (int i = 0; i < 6; ++i) next[i] += damping * delta[i];
        const FlagResiduals next_res = residual_of(from_vec(next));
        const double next_norm = next_res.max_abs();
        if (next_norm < norm) {
          u = next;
          res = next_res;
          norm = next_norm;
          improved = true;
          break;
        }
        damping *= 0.5;
      }
      if (norm < best_norm) {
        best_norm = norm;
        best_coord = from_vec(u);
      }
      if (!improved) break;
    }

    if (best_norm <= target) break;
  }

  return FlagSolveResult{best_coord, residual_of(best_coord), best_norm <= target,
                         used_iterations, best_norm};
}

}  // namespace riccati::flag

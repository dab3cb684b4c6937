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

#include "riccati/cubic3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "riccati/errors.hpp"
#include "riccati/reduction.hpp"
#include "riccati/riccati_solver.hpp"

namespace riccati::cubic3 {

namespace {

struct Entries3 {
  double h1, h2, h3;
  cdouble a, b, g;  // alpha, beta, gamma: the strictly lower triangle
};

Entries3 unpack(const HermitianMatrix& h) {
  if (h.dim() != 3) throw ShapeMismatchError("this pipeline is specific to n = 3");
  const ComplexMatrix& m = h.matrix();
  return Entries3{h.diagonal(0), h.diagonal(1), h.diagonal(2), m(1, 0), m(2, 0), m(2, 1)};
}

std::pair<cdouble, cdouble> poly_eval(const std::vector<cdouble>& coeffs, cdouble x) {
  cdouble p = 0.0;
  cdouble dp = 0.0;
  for (const cdouble& c : coeffs) {
    dp = dp * x + p;
    p = p * x + c;
  }
  return {p, dp};
}

cdouble polish(const std::vector<cdouble>& coeffs, cdouble root) {
  cdouble best = root;
  double best_mag = std::abs(poly_eval(coeffs, root).first);
  cdouble x = root;
  for (int it = 0; it < 10; ++it) {
    auto [p, dp] = poly_eval(coeffs, x);
    if (std::abs(dp) == 0.0) break;
    x -= p / dp;
    const double mag = std::abs(poly_eval(coeffs, x).first);
    if (mag < best_mag) {
      best_mag = mag;
      best = x;
    } else {
      break;
    }
  }
  return best;
}

std::array<cdouble, 2> stable_quadratic(cdouble a, cdouble b, cdouble c) {
  // a z^2 + b z + c with a != 0.
  const cdouble disc = std::sqrt(b * b - 4.0 * a * c);
  const cdouble q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                            : -0.5 * (b - disc);
  if (std::abs(q) == 0.0) {
    return {cdouble(0.0), -b / a};
  }
  return {q / a, c / q};
}

}  // namespace

CubicCoefficients cubic_coefficients(const HermitianMatrix& h) {
  const Entries3 e = unpack(h);
  const cdouble ac = std::conj(e.a);
  const cdouble bc = std::conj(e.b);
  const cdouble gc = std::conj(e.g);
  const double na = std::norm(e.a);
  const double nb = std::norm(e.b);
  const double ng = std::norm(e.g);

  const cdouble c3 = bc * gc * (e.h1 - e.h2) - e.a * bc * bc + ac * gc * gc;
  const cdouble c2 =
      gc * ((e.h1 - e.h2) * (e.h1 - e.h3) + 2.0 * na - nb - ng) -
      e.a * bc * (e.h1 + e.h2 - 2.0 * e.h3);
  const cdouble c1 =
      -e.a * ((e.h1 - e.h3) * (e.h2 - e.h3) - na - nb + 2.0 * ng) +
      e.b * gc * (-2.0 * e.h1 + e.h2 + e.h3);
  const cdouble c0 = e.b * e.b * gc + e.a * e.b * (e.h2 - e.h3) - e.a * e.a * e.g;
  return CubicCoefficients{c3, c2, c1, c0};
}

std::vector<cdouble> complex_cubic_roots(const CubicCoefficients& c) {
  const double cmax =
      std::max({std::abs(c.c3), std::abs(c.c2), std::abs(c.c1), std::abs(c.c0)});
  if (cmax == 0.0 || !std::isfinite(cmax)) {
    throw DegenerateAllZeroError("all cubic coefficients vanish");
  }
  const double lead_floor = 1e-14 * cmax;

  if (std::abs(c.c3) > lead_floor) {
    const std::vector<cdouble> coeffs = {c.c3, c.c2, c.c1, c.c0};
    const cdouble p = c.c2 / c.c3;
    const cdouble q = c.c1 / c.c3;
    const cdouble r = c.c0 / c.c3;

    // Depressed cubic t^3 + P t + Q at z = t - p/3, then Cardano with the
    // branch of u^3 that avoids cancellation.
    const cdouble big_p = q - p * p / 3.0;
    const cdouble big_q = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    const cdouble sq = std::sqrt(0.25 * big_q * big_q + big_p * big_p * big_p / 27.0);
    const cdouble u3_plus = -0.5 * big_q + sq;
    const cdouble u3_minus = -0.5 * big_q - sq;
    const cdouble u3 = (std::abs(u3_plus) >= std::abs(u3_minus)) ? u3_plus : u3_minus;

    std::vector<cdouble> roots;
    roots.reserve(3);
    if (std::abs(u3) == 0.0) {
      // P = Q = 0: triple root of the depressed cubic.
      for (int k = 0; k < 3; ++k) roots.push_back(polish(coeffs, -p / 3.0));
      return roots;
    }
    const cdouble u0 = std::pow(u3, 1.0 / 3.0);
    const cdouble omega(-0.5, 0.5 * std::sqrt(3.0));
    cdouble u = u0;
    for (int k = 0; k < 3; ++k) {
      const cdouble t = u - big_p / (3.0 * u);
      roots.push_back(polish(coeffs, t - p / 3.0));
      u *= omega;
    }
    return roots;
  }

  if (std::abs(c.c2) > lead_floor) {
    const std::vector<cdouble> coeffs = {c.c2, c.c1, c.c0};
    auto r = stable_quadratic(c.c2, c.c1, c.c0);
    return {polish(coeffs, r[0]), polish(coeffs, r[1])};
  }
  if (std::abs(c.c1) > lead_floor) {
    return {-c.c0 / c.c1};
  }
  throw DegenerateAllZeroError("cubic degenerates below the coefficient floor");
}

std::vector<cdouble> quad_z2(cdouble z1, const HermitianMatrix& h) {
  const Entries3 e = unpack(h);
  const cdouble qa = std::conj(e.g);
  const cdouble qb = (e.h2 - e.h3) + std::conj(e.b) * z1;
  const cdouble qc = std::conj(e.a) * z1 - e.g;

  const double scale = std::abs(qa) + std::abs(qb) + std::abs(qc);
  if (scale == 0.0) throw FullyDegenerateError("all quadratic coefficients vanish");
  if (std::abs(qa) >= 1e-14 * scale) {
    auto r = stable_quadratic(qa, qb, qc);
    return {r[0], r[1]};
  }
  if (std::abs(qb) >= 1e-14 * scale) {
    return {-qc / qb};
  }
  throw FullyDegenerateError("quadratic carries no constraint on z2");
}

double pair_residual(cdouble z1, cdouble z2, const HermitianMatrix& h) {
  const Entries3 e = unpack(h);
  const cdouble r1 = std::conj(e.b) * z1 * z1 + (e.h1 - e.h3) * z1 - e.b +
                     z2 * (e.a + std::conj(e.g) * z1);
  const cdouble r2 = std::conj(e.g) * z2 * z2 + (e.h2 - e.h3) * z2 - e.g +
                     z1 * (std::conj(e.a) + std::conj(e.b) * z2);
  return std::max(std::abs(r1), std::abs(r2));
}

std::pair<cdouble, cdouble> select_root_pair(
    const std::vector<std::pair<cdouble, cdouble>>& candidates, const HermitianMatrix& h,
    double tol) {
  if (candidates.empty()) throw NoValidPairError("no candidate pairs supplied");
  if (tol <= 0.0) tol = 1e-10 * std::max(h.matrix().max_norm(), 1e-300);

  double best = std::numeric_limits<double>::infinity();
  std::pair<cdouble, cdouble> best_pair = candidates.front();
  for (const auto& cand : candidates) {
    const double res = pair_residual(cand.first, cand.second, h);
    if (res < best) {
      best = res;
      best_pair = cand;
    }
  }
  if (!(best <= tol)) {
    throw NoValidPairError("best joint residual " + std::to_string(best) +
                           " exceeds tolerance " + std::to_string(tol));
  }
  return best_pair;
}

Reduced2x2 reduced_2x2(const HermitianMatrix& h, cdouble z1, cdouble z2) {
  const Entries3 e = unpack(h);
  const double rho = std::norm(z1) + std::norm(z2);

  // The stated block H~_plus.
  ComplexMatrix ht(2, 2);
  ht(0, 0) = e.h1 + std::conj(e.b) * z1 + e.b * std::conj(z1) + e.h3 * std::norm(z1);
  ht(0, 1) = std::conj(e.a) + e.g * std::conj(z1) + std::conj(e.b) * z2 +
             e.h3 * std::conj(z1) * z2;
  ht(1, 0) = e.a + std::conj(e.g) * z1 + e.b * std::conj(z2) + e.h3 * z1 * std::conj(z2);
  ht(1, 1) = e.h2 + std::conj(e.g) * z2 + e.g * std::conj(z2) + e.h3 * std::norm(z2);

  ComplexMatrix product = ht;
  if (rho > 0.0) {
    // Direct two-component closed form of (1 + Z^dagger Z)^{-1/2}.
    const double inv_root = 1.0 / std::sqrt(1.0 + rho);
    ComplexMatrix f(2, 2);
    f(0, 0) = (std::norm(z1) * inv_root + std::norm(z2)) / rho;
    f(0, 1) = std::conj(z1) * z2 * (inv_root - 1.0) / rho;
    f(1, 0) = z1 * std::conj(z2) * (inv_root - 1.0) / rho;
    f(1, 1) = (std::norm(z2) * inv_root + std::norm(z1)) / rho;
    product = f * ht * f;
  }

  const double scale = std::max(1.0, h.matrix().max_norm());
  if (std::abs(product(0, 0).imag()) > 1e-11 * scale ||
      std::abs(product(1, 1).imag()) > 1e-11 * scale) {
    throw ResidualTooLargeError("reduced block diagonal is not real");
  }
  return Reduced2x2{product(0, 0).real(), product(1, 1).real(), product(1, 0)};
}

Triple eigenvalues_3x3(const HermitianMatrix& h) {
  const Entries3 e = unpack(h);

  std::vector<cdouble> z1_roots;
  try {
    z1_roots = complex_cubic_roots(cubic_coefficients(h));
  } catch (const DegenerateAllZeroError&) {
    const auto fallback = reduction::riccati_diagonalize(h);
    return Triple{fallback.eigenvalues[0], fallback.eigenvalues[1],
                  fallback.eigenvalues[2]};
  }

  std::vector<std::pair<cdouble, cdouble>> candidates;
  candidates.reserve(2 * z1_roots.size());
  for (const cdouble& z1 : z1_roots) {
    try {
      for (const cdouble& z2 : quad_z2(z1, h)) candidates.emplace_back(z1, z2);
    } catch (const FullyDegenerateError&) {
      candidates.emplace_back(z1, cdouble(0.0, 0.0));
    }
  }

  const auto [z1, z2] = select_root_pair(candidates, h);
  const Reduced2x2 red = reduced_2x2(h, z1, z2);

  // One more quadratic on the reduced block; the smaller root keeps the
  // final chart tame.
  const solver::TwoByTwoSolve bottom = solver::solve_2x2(red.k1, red.k2, red.zeta);
  const solver::EigenvaluePair pair = bottom.eigenvalues[1];

  const double rho = std::norm(z1) + std::norm(z2);
  const double lambda3 =
      (e.h3 - 2.0 * std::real(std::conj(e.b) * z1) - 2.0 * std::real(std::conj(e.g) * z2) +
       e.h1 * std::norm(z1) + 2.0 * std::real(std::conj(e.a) * z1 * std::conj(z2)) +
       e.h2 * std::norm(z2)) /
      (1.0 + rho);

  return Triple{pair.lambda1, pair.lambda2, lambda3};
}

}  // namespace riccati::cubic3

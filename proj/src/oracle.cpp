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

#include "riccati/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "riccati/errors.hpp"

namespace riccati::oracle {

namespace {

// Plane rotation parameters (c real, s complex) annihilating the (q,p)
// entry of the Hermitian 2x2 block [[app, conj(aqp)], [aqp, aqq]] under
// J^dagger A J with J = [[c, -conj(s)], [s, c]]. The smaller-angle root of
// the tangent quadratic is taken, as in the real symmetric case.
struct Rotation {
  double c;
  cdouble s;
};

Rotation make_rotation(double app, double aqq, cdouble aqp) {
  const double mag = std::abs(aqp);
  const cdouble phase = aqp / mag;
  const double tau = (app - aqq) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return Rotation{c, phase * (t * c)};
}

void apply_rotation(ComplexMatrix& a, ComplexMatrix* u, std::size_t p, std::size_t q,
                    const Rotation& rot) {
  const std::size_t n = a.rows();
  const double c = rot.c;
  const cdouble s = rot.s;
  const cdouble sc = std::conj(s);

  // Columns p, q of A <- A J.
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble aip = a(i, p);
    const cdouble aiq = a(i, q);
    a(i, p) = c * aip + s * aiq;
    a(i, q) = -sc * aip + c * aiq;
  }
  // Rows p, q of A <- J^dagger A.
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble apj = a(p, j);
    const cdouble aqj = a(q, j);
    a(p, j) = c * apj + sc * aqj;
    a(q, j) = -s * apj + c * aqj;
  }
  a(q, p) = 0.0;
  a(p, q) = 0.0;
  a(p, p) = cdouble(a(p, p).real(), 0.0);
  a(q, q) = cdouble(a(q, q).real(), 0.0);

  if (u != nullptr) {
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble uip = (*u)(i, p);
      const cdouble uiq = (*u)(i, q);
      (*u)(i, p) = c * uip + s * uiq;
      (*u)(i, q) = -sc * uip + c * uiq;
    }
  }
}

std::pair<std::size_t, std::size_t> largest_offdiag(const ComplexMatrix& a, double* mag) {
  const std::size_t n = a.rows();
  std::size_t bp = 0, bq = 1;
  double best = -1.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double m = std::abs(a(q, p));
      if (m > best) {
        best = m;
        bp = p;
        bq = q;
      }
    }
  }
  *mag = best;
  return {bp, bq};
}

// Horner evaluation of the monic polynomial and its derivative.
std::pair<cdouble, cdouble> horner(const std::vector<cdouble>& coeffs, cdouble x) {
  cdouble p = 1.0;
  cdouble dp = 0.0;
  for (const cdouble& c : coeffs) {
    dp = dp * x + p;
    p = p * x + c;
  }
  return {p, dp};
}

cdouble newton_polish(const std::vector<cdouble>& coeffs, cdouble root) {
  double best_mag = std::abs(horner(coeffs, root).first);
  cdouble best = root;
  cdouble x = root;
  for (int it = 0; it < 12; ++it) {
    auto [p, dp] = horner(coeffs, x);
    if (std::abs(dp) == 0.0) break;
    x -= p / dp;
    const double mag = std::abs(horner(coeffs, x).first);
    if (mag < best_mag) {
      best_mag = mag;
      best = x;
    } else if (mag > 4.0 * best_mag) {
      break;
    }
  }
  return best;
}

std::array<cdouble, 2> quadratic_roots(cdouble b, cdouble c) {
  // Roots of x^2 + b x + c with the cancellation-free branch choice.
  const cdouble disc = std::sqrt(b * b - 4.0 * c);
  const cdouble q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                            : -0.5 * (b - disc);
  if (std::abs(q) == 0.0) return {cdouble(0.0), -b};
  return {q, c / q};
}

// Shifted QR with Givens rotations on an upper Hessenberg matrix; trailing
// deflation only, which is plenty at companion sizes.
std::vector<cdouble> hessenberg_eigenvalues(ComplexMatrix a) {
  const std::size_t n = a.rows();
  std::vector<cdouble> out;
  out.reserve(n);
  std::size_t m = n;
  int stall = 0;
  const int max_total = 60 * static_cast<int>(n) + 60;
  int total = 0;

  while (m > 0) {
    if (m == 1) {
      out.push_back(a(0, 0));
      break;
    }
    if (m == 2) {
      const cdouble b = -(a(0, 0) + a(1, 1));
      const cdouble c = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
      auto r = quadratic_roots(b, c);
      out.push_back(r[0]);
      out.push_back(r[1]);
      break;
    }

    const double sub = std::abs(a(m - 1, m - 2));
    const double local = std::abs(a(m - 2, m - 2)) + std::abs(a(m - 1, m - 1));
    if (sub <= 1e-15 * std::max(local, 1e-290)) {
      out.push_back(a(m - 1, m - 1));
      --m;
      stall = 0;
      continue;
    }

    if (++total > max_total) {
      throw NoConvergenceError("companion QR failed to deflate", sub);
    }

    // Wilkinson-style shift from the trailing 2x2, with an occasional
    // exceptional shift to break cycles.
    cdouble shift;
    if (++stall % 14 == 0) {
      shift = a(m - 1, m - 1) + cdouble(1.5 * sub, 0.75 * sub);
    } else {
      const cdouble x = a(m - 2, m - 2);
      const cdouble w = a(m - 1, m - 1);
      const cdouble y = a(m - 2, m - 1);
      const cdouble z = a(m - 1, m - 2);
      const cdouble half = 0.5 * (x + w);
      const cdouble rad = std::sqrt(half * half - (x * w - y * z));
      const cdouble e1 = half + rad;
      const cdouble e2 = half - rad;
      shift = (std::abs(e1 - w) < std::abs(e2 - w)) ? e1 : e2;
    }

    for (std::size_t i = 0; i < m; ++i) a(i, i) -= shift;

    std::vector<double> cs(m - 1);
    std::vector<cdouble> sn(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const cdouble f = a(i, i);
      const cdouble g = a(i + 1, i);
      const double fa = std::abs(f);
      const double ga = std::abs(g);
      double c;
      cdouble s;
      if (ga == 0.0) {
        c = 1.0;
        s = 0.0;
      } else if (fa == 0.0) {
        c = 0.0;
        s = 1.0;
      } else {
        const double r = std::hypot(fa, ga);
        c = fa / r;
        s = (f / fa) * std::conj(g) / r;
      }
      cs[i] = c;
      sn[i] = s;
      for (std::size_t j = i; j < m; ++j) {
        const cdouble t1 = a(i, j);
        const cdouble t2 = a(i + 1, j);
        a(i, j) = c * t1 + s * t2;
        a(i + 1, j) = -std::conj(s) * t1 + c * t2;
      }
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double c = cs[i];
      const cdouble s = sn[i];
      const std::size_t top = std::min(i + 2, m - 1);
      for (std::size_t r = 0; r <= top; ++r) {
        const cdouble t1 = a(r, i);
        const cdouble t2 = a(r, i + 1);
        a(r, i) = c * t1 + std::conj(s) * t2;
        a(r, i + 1) = -s * t1 + c * t2;
      }
    }
    for (std::size_t i = 0; i < m; ++i) a(i, i) += shift;
  }
  return out;
}

}  // namespace

cdouble CharPoly::eval(cdouble x) const { return horner(coeffs, x).first; }

cdouble CharPoly::eval_derivative(cdouble x) const { return horner(coeffs, x).second; }

double CharPoly::max_imag_residue() const {
  double m = 0.0;
  for (const cdouble& c : coeffs) m = std::max(m, std::abs(c.imag()));
  return m;
}

CharPoly char_poly(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  if (n > 12) throw TooLargeError("characteristic polynomial limited to n <= 12");
  const ComplexMatrix& a = h.matrix();

  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k)/k.
  std::vector<cdouble> coeffs(n);
  ComplexMatrix m = ComplexMatrix::identity(n);
  cdouble prev = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      m = a * m;
      for (std::size_t i = 0; i < n; ++i) m(i, i) += prev;
    }
    const cdouble ck = -(a * m).trace() / static_cast<double>(k);
    coeffs[k - 1] = ck;
    prev = ck;
  }
  return CharPoly{std::move(coeffs)};
}

std::vector<cdouble> poly_roots(const CharPoly& p) {
  std::vector<cdouble> coeffs = p.coeffs;
  if (coeffs.empty()) throw Error("poly_roots needs degree >= 1");

  std::vector<cdouble> roots;
  // Exact zero roots peel off without touching the companion matrix.
  double scale = 1.0;
  for (const cdouble& c : coeffs) scale = std::max(scale, std::abs(c));
  while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-300 * scale) {
    roots.push_back(cdouble(0.0, 0.0));
    coeffs.pop_back();
  }

  const std::size_t deg = coeffs.size();
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.push_back(-coeffs[0]);
    return roots;
  }
  if (deg == 2) {
    auto r = quadratic_roots(coeffs[0], coeffs[1]);
    roots.push_back(newton_polish(coeffs, r[0]));
    roots.push_back(newton_polish(coeffs, r[1]));
    return roots;
  }

  ComplexMatrix companion(deg, deg);
  for (std::size_t i = 0; i + 1 < deg; ++i) companion(i + 1, i) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[deg - 1 - i];

  for (const cdouble& r : hessenberg_eigenvalues(std::move(companion))) {
    roots.push_back(newton_polish(coeffs, r));
  }
  return roots;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& herm, double tol) {
  if (!herm.square()) throw NotSquareError("eigendecomposition of a non-square matrix");
  const std::size_t n = herm.rows();
  ComplexMatrix a = herm;
  ComplexMatrix u = ComplexMatrix::identity(n);

  if (n > 1) {
    const double threshold =
        std::max(tol * herm.max_norm(), 64.0 * 1e-17 * herm.max_norm());
    const long cap = 50L * static_cast<long>(n) * static_cast<long>(n);
    long rotations = 0;
    while (true) {
      double mag = 0.0;
      const auto [p, q] = largest_offdiag(a, &mag);
      if (mag <= threshold) break;
      if (++rotations > cap) {
        throw NoConvergenceError("Jacobi rotation cap exceeded", mag);
      }
      apply_rotation(a, &u, p, q, make_rotation(a(p, p).real(), a(q, q).real(), a(q, p)));
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = u(i, order[j]);
  }
  return out;
}

Spectrum jacobi_eigensolve(const HermitianMatrix& h, double tol, bool want_vectors) {
  EigenDecomposition eig = hermitian_eigen(h.matrix(), tol);
  Spectrum s{std::move(eig.values), std::nullopt};
  if (want_vectors) s.rotations.emplace(std::move(eig.vectors));
  return s;
}

ComplexMatrix sylvester_bruteforce(const BlockPartition& part) {
  // Z H_plus - H_minus Z = V, vectorized.
  ComplexMatrix minus_hm = part.h_minus.matrix();
  minus_hm *= cdouble(-1.0, 0.0);
  try {
    return solve_commutator_system(part.h_plus.matrix(), minus_hm, part.v);
  } catch (const SingularMatrixError&) {
    throw SingularOperatorError("H_plus and H_minus share an eigenvalue");
  }
}

}  // namespace riccati::oracle

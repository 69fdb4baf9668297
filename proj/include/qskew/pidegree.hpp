#pragma once

#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "qskew/intmatrix.hpp"

namespace qskew {

/// Smith normal form with unimodular transforms: U * A * V = S.
struct SNFResult {
  IntMatrix S, U, V;
  std::vector<Int> invariant_factors;  // nonnegative, divisibility chain, zeros last
};

/// Exact Smith normal form. Pivot rule: smallest nonzero absolute value in
/// the remaining submatrix, ties broken row-major.
inline SNFResult smith_normal_form(const IntMatrix& A) {
  const int m = A.rows(), n = A.cols();
  IntMatrix S = A;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);

  auto swap_rows = [&](int a, int b) {
    if (a == b) return;
    for (int j = 0; j < n; ++j) std::swap(S.at(a, j), S.at(b, j));
    for (int j = 0; j < m; ++j) std::swap(U.at(a, j), U.at(b, j));
  };
  auto swap_cols = [&](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m; ++i) std::swap(S.at(i, a), S.at(i, b));
    for (int i = 0; i < n; ++i) std::swap(V.at(i, a), V.at(i, b));
  };
  auto add_row = [&](int dst, int src, const Int& c) {  // row dst += c * row src
    for (int j = 0; j < n; ++j) S.at(dst, j) += c * S.at(src, j);
    for (int j = 0; j < m; ++j) U.at(dst, j) += c * U.at(src, j);
  };
  auto add_col = [&](int dst, int src, const Int& c) {  // col dst += c * col src
    for (int i = 0; i < m; ++i) S.at(i, dst) += c * S.at(i, src);
    for (int i = 0; i < n; ++i) V.at(i, dst) += c * V.at(i, src);
  };
  auto negate_row = [&](int r) {
    for (int j = 0; j < n; ++j) S.at(r, j) = -S.at(r, j);
    for (int j = 0; j < m; ++j) U.at(r, j) = -U.at(r, j);
  };

  // round-to-nearest quotient keeps remainders at most half the pivot
  auto near_q = [](const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r * 2 > abs(b)) q += (b > 0 ? 1 : -1);
    return q;
  };

  const int t_max = std::min(m, n);
  for (int t = 0; t < t_max; ++t) {
    while (true) {
      // pick pivot: smallest |value| over the trailing submatrix, row-major
      // ties; re-selected every round to keep entry growth in check
      int pi = -1, pj = -1;
      Int best = 0;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j) {
          const Int& v = S.at(i, j);
          if (v == 0) continue;
          Int av = abs(v);
          if (pi < 0 || av < best) {
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        t = t_max;  // trailing submatrix is zero
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool reduced = false;
      for (int i = t + 1; i < m; ++i) {
        if (S.at(i, t) == 0) continue;
        add_row(i, t, -near_q(S.at(i, t), S.at(t, t)));
        reduced = true;
      }
      for (int j = t + 1; j < n; ++j) {
        if (S.at(t, j) == 0) continue;
        add_col(j, t, -near_q(S.at(t, j), S.at(t, t)));
        reduced = true;
      }
      if (reduced) continue;  // remainders may now be smaller pivots
      // row and column are clear; pivot must divide every trailing entry
      bool fixed = false;
      for (int i = t + 1; i < m && !fixed; ++i)
        for (int j = t + 1; j < n && !fixed; ++j)
          if (S.at(i, j) % S.at(t, t) != 0) {
            add_row(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (t >= t_max) break;
    if (S.at(t, t) < 0) negate_row(t);
  }

  SNFResult res{std::move(S), std::move(U), std::move(V), {}};
  for (int t = 0; t < t_max; ++t) res.invariant_factors.push_back(res.S.at(t, t));

  // internal invariants: transforms unimodular and exact
  if (res.U * A * res.V != res.S) throw std::logic_error("smith_normal_form: U*A*V != S");
  Int du = res.U.determinant(), dv = res.V.determinant();
  if (abs(du) != 1 || abs(dv) != 1) throw std::logic_error("smith_normal_form: transforms not unimodular");
  for (size_t i = 0; i + 1 < res.invariant_factors.size(); ++i) {
    const Int& a = res.invariant_factors[i];
    const Int& b = res.invariant_factors[i + 1];
    if (a == 0 && b != 0) throw std::logic_error("smith_normal_form: zero before nonzero factor");
    if (a != 0 && b % a != 0) throw std::logic_error("smith_normal_form: divisibility chain broken");
  }
  return res;
}

/// |image of Z^n --A--> Z^n --> (Z/ell)^n| = prod_i ell / gcd(d_i, ell),
/// taken over all n invariant factors with gcd(0, ell) = ell.
inline Int image_cardinality(const IntMatrix& A, long ell) {
  if (ell < 1) throw DomainError("image_cardinality: ell must be positive");
  if (A.rows() != A.cols()) throw DomainError("image_cardinality: matrix must be square");
  SNFResult snf = smith_normal_form(A);
  Int h = 1;
  Int l(ell);
  for (int i = 0; i < A.rows(); ++i) {
    Int d = i < static_cast<int>(snf.invariant_factors.size()) ? snf.invariant_factors[i] : Int(0);
    h *= l / int_gcd(d, l);
  }
  return h;
}

struct PIDegreeReport {
  long ell = 0;
  Int h;
  Int pi_degree;
  std::vector<Int> invariant_factors;
};

/// De Concini-Procesi: PI degree of the quantum affine space with exponent
/// matrix A at a primitive ell-th root of unity is sqrt(h).
inline PIDegreeReport pi_degree(const IntMatrix& A, long ell) {
  if (ell < 1) throw DomainError("pi_degree: ell must be positive");
  if (!A.is_skew_symmetric()) throw DomainError("pi_degree: matrix must be skew-symmetric");
  SNFResult snf = smith_normal_form(A);
  PIDegreeReport rep;
  rep.ell = ell;
  rep.invariant_factors = snf.invariant_factors;
  rep.h = 1;
  Int l(ell);
  for (int i = 0; i < A.rows(); ++i) {
    Int d = i < static_cast<int>(snf.invariant_factors.size()) ? snf.invariant_factors[i] : Int(0);
    rep.h *= l / int_gcd(d, l);
  }
  try {
    rep.pi_degree = exact_isqrt(rep.h);
  } catch (const std::logic_error&) {
    throw std::logic_error(
        "pi_degree: image cardinality is not a perfect square for a skew-symmetric matrix; "
        "this contradicts the invariant-factor pairing and indicates a bug");
  }
  return rep;
}

/// Independent oracle: enumerates the image of (Z/ell)^n.
inline Int brute_force_image(const IntMatrix& A, long ell) {
  if (ell < 1) throw DomainError("brute_force_image: ell must be positive");
  if (A.rows() != A.cols()) throw DomainError("brute_force_image: matrix must be square");
  const int n = A.rows();
  double total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<double>(ell);
  if (total > 1e7) throw DomainError("brute_force_image: enumeration bound ell^n <= 10^7 exceeded");

  std::vector<long> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int v = A.at(i, j) % ell;
      if (v < 0) v += ell;
      a[static_cast<size_t>(i) * n + j] = v.get_si();
    }
  std::set<std::vector<long>> images;
  std::vector<long> x(n, 0), y(n);
  while (true) {
    for (int i = 0; i < n; ++i) {
      long acc = 0;
      for (int j = 0; j < n; ++j) acc = (acc + a[static_cast<size_t>(i) * n + j] * x[j]) % ell;
      y[i] = acc;
    }
    images.insert(y);
    int k = 0;
    while (k < n && ++x[k] == ell) x[k++] = 0;
    if (k == n) break;
  }
  return Int(static_cast<long>(images.size()));
}

}  // namespace qskew

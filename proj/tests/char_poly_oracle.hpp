#pragma once

// Test-side oracle: exact characteristic polynomial of a small integer matrix
// by interpolation of det(xI - A) at integer points.

#include <vector>

#include "qskew/intmatrix.hpp"
#include "qskew/laurent.hpp"

namespace qskew::testsupport {

inline LaurentIntPoly char_poly(const IntMatrix& a) {
  const int n = a.rows();
  std::vector<Int> values;
  for (int x = 0; x <= n; ++x) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = (i == j ? Int(x) : Int(0)) - a.at(i, j);
    values.push_back(m.determinant());
  }
  const int k = n + 1;
  std::vector<std::vector<Rat>> vm(k, std::vector<Rat>(k + 1));
  for (int i = 0; i < k; ++i) {
    Rat p(1);
    for (int j = 0; j < k; ++j) {
      vm[i][j] = p;
      p *= Rat(i);
    }
    vm[i][k] = Rat(values[i]);
  }
  for (int c = 0; c < k; ++c) {
    int piv = c;
    while (vm[piv][c] == 0) ++piv;
    std::swap(vm[c], vm[piv]);
    for (int r2 = 0; r2 < k; ++r2) {
      if (r2 == c || vm[r2][c] == 0) continue;
      Rat f = vm[r2][c] / vm[c][c];
      for (int j = c; j <= k; ++j) vm[r2][j] -= f * vm[c][j];
    }
  }
  LaurentIntPoly out;
  for (int j = 0; j < k; ++j) {
    Rat coeff = vm[j][k] / vm[j][j];
    if (coeff.get_den() != 1) throw std::logic_error("char_poly: non-integer coefficient");
    out.add_term(j, coeff.get_num());
  }
  return out;
}

inline IntMatrix quantum_matrices_block(int n) {
  IntMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = i == j ? 0 : (i < j ? 1 : -1);
  return a;
}

inline LaurentIntPoly binomial_power(long c, int n) {  // (t + c)^n
  LaurentIntPoly base;
  base.add_term(1, 1);
  base.add_term(0, c);
  LaurentIntPoly r = LaurentIntPoly::one();
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

}  // namespace qskew::testsupport

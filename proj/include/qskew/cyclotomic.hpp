#pragma once

#include <map>
#include <vector>

#include "qskew/laurent.hpp"

namespace qskew {

/// Euler totient.
inline long euler_phi(long r) {
  if (r <= 0) throw DomainError("euler_phi: r must be positive");
  long result = r;
  long n = r;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// The r-th cyclotomic polynomial, monic of degree phi(r), computed as
/// (x^r - 1) / prod_{d | r, d < r} Phi_d.
inline const LaurentIntPoly& cyclotomic_poly(long r) {
  if (r <= 0) throw DomainError("cyclotomic_poly: r must be positive");
  static std::map<long, LaurentIntPoly> cache;
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;
  LaurentIntPoly num = LaurentIntPoly(r, Int(1)) - LaurentIntPoly::one();
  for (long d = 1; d < r; ++d) {
    if (r % d != 0) continue;
    auto q = num.divide_exact(cyclotomic_poly(d));
    if (!q) throw std::logic_error("cyclotomic_poly: inexact division");
    num = *q;
  }
  return cache.emplace(r, std::move(num)).first->second;
}

}  // namespace qskew

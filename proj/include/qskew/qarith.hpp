#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qskew/laurent.hpp"

namespace qskew {

/// The t-integer (m)_t = t^{m-1} + ... + t + 1, with (0)_t = 0.
inline LaurentIntPoly t_integer(long m) {
  if (m < 0) throw DomainError("t_integer: m must be nonnegative");
  LaurentIntPoly r;
  for (long e = 0; e < m; ++e) r.add_term(e, 1);
  return r;
}

/// The t-factorial (m)!_t = (m)_t (m-1)_t ... (1)_t, with (0)!_t = 1.
inline LaurentIntPoly t_factorial(long m) {
  if (m < 0) throw DomainError("t_factorial: m must be nonnegative");
  LaurentIntPoly r = LaurentIntPoly::one();
  for (long j = 2; j <= m; ++j) r *= t_integer(j);
  return r;
}

/// Gaussian t-binomial coefficient, computed by the Pascal recurrence
/// binom(n,m) = binom(n-1,m) + t^{n-m} binom(n-1,m-1).
inline const LaurentIntPoly& t_binomial(long n, long m) {
  if (n < 0 || m < 0 || m > n) throw DomainError("t_binomial: need 0 <= m <= n");
  static const LaurentIntPoly kOne = LaurentIntPoly::one();
  if (m == 0 || m == n) return kOne;
  static std::map<std::pair<long, long>, LaurentIntPoly> cache;
  auto key = std::make_pair(n, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  LaurentIntPoly v = t_binomial(n - 1, m) + LaurentIntPoly(n - m, Int(1)) * t_binomial(n - 1, m - 1);
  return cache.emplace(key, std::move(v)).first->second;
}

}  // namespace qskew

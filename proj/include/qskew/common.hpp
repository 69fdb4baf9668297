#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qskew {

using Int = mpz_class;
using Rat = mpq_class;

// Usage errors: malformed requests, mismatched specs, out-of-domain inputs.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The (tau, delta) pair of the last variable is not q-skew removable (q = 1).
struct NotRemovable : DomainError {
  using DomainError::DomainError;
};

// delta^n(generator) is not divisible by (n)!_t in the generic lift.
struct NotExtendable : DomainError {
  using DomainError::DomainError;
};

// A variable would move past one whose derivation involves it.
struct NotReorderable : DomainError {
  using DomainError::DomainError;
};

// A nilpotence search exceeded the configured index cap.
struct NotLocallyNilpotent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Exact integer square root; throws if v is not a perfect square.
inline Int exact_isqrt(const Int& v) {
  if (v < 0) throw DomainError("exact_isqrt: negative input");
  Int root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
  if (rem != 0) throw std::logic_error("exact_isqrt: value is not a perfect square");
  return root;
}

}  // namespace qskew

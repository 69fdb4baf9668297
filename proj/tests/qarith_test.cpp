#include "qskew/qarith.hpp"

#include <gtest/gtest.h>

#include <random>

#include "qskew/json_io.hpp"

namespace qskew {
namespace {

LaurentIntPoly poly(std::initializer_list<std::pair<long, long>> terms) {
  LaurentIntPoly p;
  for (const auto& [e, c] : terms) p.add_term(e, Int(c));
  return p;
}

// Independent oracle: the defining quotient (n)!_t / ((m)!_t (n-m)!_t).
LaurentIntPoly binomial_by_division(long n, long m) {
  auto q = t_factorial(n).divide_exact(t_factorial(m) * t_factorial(n - m));
  EXPECT_TRUE(q.has_value()) << "factorial quotient left a remainder";
  return *q;
}

Int ordinary_binomial(long n, long m) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, m);
  return r;
}

TEST(TInteger, Examples) {
  EXPECT_EQ(t_integer(3), poly({{2, 1}, {1, 1}, {0, 1}}));
  EXPECT_EQ(t_integer(1), LaurentIntPoly::one());
  EXPECT_EQ(t_integer(0), LaurentIntPoly::zero());
  EXPECT_THROW(t_integer(-1), DomainError);
}

TEST(TFactorial, Examples) {
  EXPECT_EQ(t_factorial(0), LaurentIntPoly::one());
  EXPECT_EQ(t_factorial(2), poly({{1, 1}, {0, 1}}));
  EXPECT_EQ(t_factorial(3), poly({{3, 1}, {2, 2}, {1, 2}, {0, 1}}));
}

TEST(TBinomial, Examples) {
  for (long n = 0; n <= 8; ++n) {
    EXPECT_EQ(t_binomial(n, 0), LaurentIntPoly::one());
    EXPECT_EQ(t_binomial(n, n), LaurentIntPoly::one());
  }
  EXPECT_EQ(t_binomial(2, 1), poly({{1, 1}, {0, 1}}));
  EXPECT_EQ(t_binomial(4, 2), poly({{4, 1}, {3, 1}, {2, 2}, {1, 1}, {0, 1}}));
  EXPECT_THROW(t_binomial(2, 3), DomainError);
  EXPECT_THROW(t_binomial(2, -1), DomainError);
}

TEST(TBinomial, PascalIdentitiesUpTo20) {
  for (long n = 2; n <= 20; ++n) {
    for (long m = 1; m < n; ++m) {
      const LaurentIntPoly& b = t_binomial(n, m);
      LaurentIntPoly first = t_binomial(n - 1, m) + LaurentIntPoly(n - m, Int(1)) * t_binomial(n - 1, m - 1);
      LaurentIntPoly second = t_binomial(n - 1, m - 1) + LaurentIntPoly(m, Int(1)) * t_binomial(n - 1, m);
      EXPECT_EQ(b, first) << "first Pascal identity fails at n=" << n << " m=" << m;
      EXPECT_EQ(b, second) << "second Pascal identity fails at n=" << n << " m=" << m;
    }
  }
}

TEST(TBinomial, EvaluationAtOneIsOrdinaryBinomial) {
  for (long n = 0; n <= 20; ++n)
    for (long m = 0; m <= n; ++m)
      EXPECT_EQ(t_binomial(n, m).evaluate_at_one(), ordinary_binomial(n, m))
          << "n=" << n << " m=" << m;
}

TEST(TBinomial, RecurrenceMatchesFactorialQuotient) {
  for (long n = 0; n <= 12; ++n)
    for (long m = 0; m <= n; ++m)
      EXPECT_EQ(t_binomial(n, m), binomial_by_division(n, m)) << "n=" << n << " m=" << m;
}

TEST(LaurentIntPoly, RingLawsOnRandomSamples) {
  std::mt19937_64 rng(20240711);
  auto rand_poly = [&] {
    LaurentIntPoly p;
    int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i)
      p.add_term(static_cast<long>(rng() % 9) - 4, Int(static_cast<long>(rng() % 11) - 5));
    return p;
  };
  for (int iter = 0; iter < 300; ++iter) {
    LaurentIntPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(LaurentIntPoly, ExactDivision) {
  LaurentIntPoly a = poly({{3, 2}, {0, -2}});
  LaurentIntPoly b = poly({{1, 1}, {0, -1}});
  auto q = a.divide_exact(b);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q * b, a);
  EXPECT_FALSE(poly({{1, 1}, {0, 1}}).divide_exact(poly({{1, 2}})).has_value());
  EXPECT_THROW(a.divide_exact(LaurentIntPoly::zero()), DomainError);
}

TEST(LaurentIntPoly, JsonRoundTrip) {
  LaurentIntPoly p = poly({{-2, 7}, {0, -1}, {5, 123456789}});
  nlohmann::json j = laurent_to_json(p);
  EXPECT_EQ(j["terms"][0][0], -2);
  EXPECT_EQ(j["terms"][0][1], "7");
  EXPECT_EQ(laurent_from_json(j), p);
}

}  // namespace
}  // namespace qskew

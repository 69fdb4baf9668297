#include "qskew/scalar.hpp"

#include <gtest/gtest.h>

#include <random>

#include "qskew/qarith.hpp"

namespace qskew {
namespace {

LaurentIntPoly dense(std::initializer_list<std::pair<long, long>> terms) {
  LaurentIntPoly p;
  for (const auto& [e, c] : terms) p.add_term(e, Int(c));
  return p;
}

TEST(CyclotomicPoly, SmallCases) {
  EXPECT_EQ(cyclotomic_poly(1), dense({{1, 1}, {0, -1}}));
  EXPECT_EQ(cyclotomic_poly(4), dense({{2, 1}, {0, 1}}));
  EXPECT_EQ(cyclotomic_poly(6), dense({{2, 1}, {1, -1}, {0, 1}}));
  EXPECT_THROW(cyclotomic_poly(0), DomainError);
}

// Oracle: Phi_r = (x^r - 1) / prod over proper divisors, recomputed here by
// repeatedly clearing roots of each proper cyclotomic factor.
TEST(CyclotomicPoly, DivisionOracleUpTo30) {
  for (long r = 1; r <= 30; ++r) {
    LaurentIntPoly xr1 = dense({{r, 1}, {0, -1}});
    LaurentIntPoly prod = LaurentIntPoly::one();
    for (long d = 1; d <= r; ++d)
      if (r % d == 0) prod *= cyclotomic_poly(d);
    EXPECT_EQ(prod, xr1) << "product of cyclotomic factors fails at r=" << r;
    EXPECT_EQ(cyclotomic_poly(r).max_exponent(), euler_phi(r));
    EXPECT_EQ(cyclotomic_poly(r).coeff(euler_phi(r)), Int(1));
  }
}

TEST(ScalarGeneric, ArithmeticAndParse) {
  FieldPtr f = ScalarField::generic({"q"});
  Scalar q = f->param("q");
  Scalar one = f->one();
  Scalar expr = (q - one) * (q + one);
  EXPECT_EQ(expr, q * q - one);
  EXPECT_EQ(parse_scalar(f, "q^2 - 1"), expr);
  EXPECT_EQ(parse_scalar(f, "(q-1)*(q+1)"), expr);
  EXPECT_EQ(parse_scalar(f, "q^-2"), q.pow(-2));
  EXPECT_EQ(parse_scalar(f, "-3/2*q"), f->from_int(-3) * q / f->from_int(2));
  EXPECT_THROW(parse_scalar(f, "p1"), DomainError);
  EXPECT_THROW(parse_scalar(f, "q +"), DomainError);
  EXPECT_THROW((void)f->zero().inverse(), DomainError);
}

TEST(ScalarGeneric, ParsePrintRoundTrip) {
  FieldPtr f = ScalarField::generic({"q1", "q2", "g12"});
  std::mt19937_64 rng(7);
  auto rand_scalar = [&]() {
    Scalar acc = f->zero();
    for (int t = 0; t < 3; ++t) {
      Scalar term = f->from_int(static_cast<long>(rng() % 7) - 3);
      for (int v = 0; v < 3; ++v) term *= f->param(f->vars()[v]).pow(static_cast<long>(rng() % 5) - 2);
      acc += term;
    }
    return acc;
  };
  for (int i = 0; i < 50; ++i) {
    Scalar a = rand_scalar(), b = rand_scalar();
    if (!b.is_zero()) a /= b;
    EXPECT_EQ(parse_scalar(f, a.to_string()), a) << a.to_string();
  }
}

TEST(ScalarCyclotomic, InversionExamples) {
  FieldPtr f = ScalarField::cyclotomic(4);
  Scalar zeta = f->generator();
  EXPECT_EQ(f->one().inverse(), f->one());
  EXPECT_EQ(zeta.inverse(), -zeta);
  EXPECT_TRUE((zeta * zeta.inverse()).is_one());
  EXPECT_THROW((void)f->zero().inverse(), DomainError);
}

TEST(ScalarCyclotomic, GeneratorOrder) {
  for (long r = 2; r <= 16; ++r) {
    FieldPtr f = ScalarField::cyclotomic(r);
    Scalar g = f->generator();
    EXPECT_TRUE(g.pow(r).is_one()) << r;
    for (long d = 1; d < r; ++d)
      if (r % d == 0) {
        EXPECT_FALSE(g.pow(d).is_one()) << "r=" << r << " d=" << d;
      }
  }
}

TEST(ScalarCyclotomic, EvaluateAtRoot) {
  // (l)_t vanishes at a primitive l-th root for l = 2..8
  for (long l = 2; l <= 8; ++l) {
    FieldPtr f = ScalarField::cyclotomic(l);
    EXPECT_TRUE(evaluate_at_root(t_integer(l), f).is_zero()) << l;
  }
  FieldPtr f4 = ScalarField::cyclotomic(4);
  EXPECT_TRUE(evaluate_at_root(t_binomial(4, 2), f4).is_zero());
  Scalar z = f4->generator();
  EXPECT_EQ(evaluate_at_root(t_integer(2), f4), f4->one() + z);
  // generic mode substitutes the formal parameter
  FieldPtr g = ScalarField::generic({"q"});
  EXPECT_EQ(evaluate_at_root(t_integer(2), g), g->one() + g->param("q"));
}

TEST(ScalarCyclotomic, ParsePrintRoundTrip) {
  FieldPtr f = ScalarField::cyclotomic(5, {{"q", 2}});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    Scalar a = f->zero();
    for (int t = 0; t < 3; ++t)
      a += f->generator().pow(rng() % 5) * Int(static_cast<long>(rng() % 9) - 4);
    Scalar b = f->from_int(static_cast<long>(rng() % 5) + 1);
    a /= b;
    EXPECT_EQ(parse_scalar(f, a.to_string()), a) << a.to_string();
  }
  EXPECT_EQ(parse_scalar(f, "q"), f->generator().pow(2));
}

TEST(ScalarFields, SqrtFieldsSatisfySSquaredEqualsQ) {
  FieldPtr g = ScalarField::generic_with_sqrt();
  EXPECT_EQ(g->param("s") * g->param("s"), g->param("q"));
  FieldPtr c = ScalarField::cyclotomic_with_sqrt(3);
  EXPECT_EQ(c->order(), 6);
  EXPECT_EQ(c->param("s") * c->param("s"), c->param("q"));
  // q = zeta_6^2 is a primitive cube root
  EXPECT_TRUE(c->param("q").pow(3).is_one());
  EXPECT_FALSE(c->param("q").is_one());
}

template <typename Gen>
void check_field_axioms(const FieldPtr& f, Gen rand_scalar, int iters) {
  for (int i = 0; i < iters; ++i) {
    Scalar a = rand_scalar(), b = rand_scalar(), c = rand_scalar();
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + f->zero(), a);
    ASSERT_EQ(a * f->one(), a);
    ASSERT_TRUE((a - a).is_zero());
    if (!a.is_zero()) {
      ASSERT_TRUE((a * a.inverse()).is_one());
      ASSERT_TRUE((a.inverse() * a).is_one());
    }
  }
}

TEST(ScalarFields, FieldAxiomsGeneric) {
  FieldPtr f = ScalarField::generic({"q", "p1"});
  std::mt19937_64 rng(101);
  auto rand_scalar = [&] {
    Scalar acc = f->zero();
    int terms = static_cast<int>(rng() % 3);
    for (int t = 0; t <= terms; ++t) {
      Scalar v = f->from_int(static_cast<long>(rng() % 9) - 4);
      v *= f->param("q").pow(static_cast<long>(rng() % 3) - 1);
      v *= f->param("p1").pow(static_cast<long>(rng() % 3) - 1);
      acc += v;
    }
    return acc;
  };
  check_field_axioms(f, rand_scalar, 1000);
}

TEST(ScalarFields, FieldAxiomsGenericSqrt) {
  FieldPtr f = ScalarField::generic_with_sqrt();
  std::mt19937_64 rng(102);
  auto rand_scalar = [&] {
    Scalar acc = f->zero();
    int terms = static_cast<int>(rng() % 3);
    for (int t = 0; t <= terms; ++t)
      acc += f->from_int(static_cast<long>(rng() % 9) - 4) * f->param("s").pow(static_cast<long>(rng() % 5) - 2);
    return acc;
  };
  check_field_axioms(f, rand_scalar, 1000);
}

TEST(ScalarFields, FieldAxiomsCyclotomic) {
  FieldPtr f = ScalarField::cyclotomic(12);
  std::mt19937_64 rng(103);
  auto rand_scalar = [&] {
    Scalar acc = f->zero();
    int terms = static_cast<int>(rng() % 3);
    for (int t = 0; t <= terms; ++t)
      acc += f->generator().pow(rng() % 12) * Int(static_cast<long>(rng() % 9) - 4);
    return acc;
  };
  check_field_axioms(f, rand_scalar, 1000);
}

TEST(ScalarGeneric, SpecializeIntoCyclotomic) {
  FieldPtr g = ScalarField::generic({"q1", "q2"});
  FieldPtr c = ScalarField::cyclotomic(5, {{"q1", 1}, {"q2", 3}});
  Scalar expr = (g->param("q1") - g->one()) / g->param("q2");
  Scalar expected = (c->param("q1") - c->one()) / c->param("q2");
  EXPECT_EQ(specialize_scalar(expr, c), expected);
}

TEST(ScalarGeneric, UnitMonomialExtraction) {
  FieldPtr f = ScalarField::generic({"a", "b"});
  Scalar m = f->param("a").pow(2) * f->param("b").pow(-3);
  auto mono = m.as_unit_monomial();
  ASSERT_TRUE(mono.has_value());
  EXPECT_EQ((*mono)[0], 2);
  EXPECT_EQ((*mono)[1], -3);
  EXPECT_FALSE((m + f->one()).as_unit_monomial().has_value());
  EXPECT_FALSE((m * Int(2)).as_unit_monomial().has_value());
}

}  // namespace
}  // namespace qskew

// Acceptance suite: one test per acceptance criterion, each printing a
// single PASS/FAIL line, with the stated exactness and time budgets.

#include <gtest/gtest.h>

#include <chrono>
#include <map>
#include <random>

#include "char_poly_oracle.hpp"
#include "qskew/verify.hpp"

namespace qskew {
namespace {

class Criterion {
 public:
  Criterion(int number, std::string what) : number_(number), what_(std::move(what)) {
    start_ = std::chrono::steady_clock::now();
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  ~Criterion() {
    bool ok = !::testing::Test::HasFailure();
    std::printf("CRITERION %2d: %s  (%.2fs)  %s\n", number_, ok ? "PASS" : "FAIL", seconds(),
                what_.c_str());
    std::fflush(stdout);
  }

 private:
  int number_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
};

void sweep_family(FamilyKind kind, int n_lo, int n_hi, long r_lo, long r_hi) {
  for (int n = n_lo; n <= n_hi; ++n)
    for (long r = r_lo; r <= r_hi; ++r) {
      FamilyId id{kind, n};
      EXPECT_EQ(pi_degree(family_matrix(id, {}), r).pi_degree, closed_form_pidegree(id, r))
          << family_kind_name(kind) << " n=" << n << " r=" << r;
    }
}

TEST(Acceptance, C01_QuantumEuclideanOddPIDegrees) {
  Criterion c(1, "quantum Euclidean odd PI degrees, n=1..5, r=2..13");
  sweep_family(FamilyKind::EuclideanOdd, 1, 5, 2, 13);
  EXPECT_LT(c.seconds(), 5.0);
}

TEST(Acceptance, C02_QuantizedWeylSingleParameter) {
  Criterion c(2, "quantized Weyl single-parameter PI degree r^n, n=1..4, r=2..10");
  sweep_family(FamilyKind::WeylSingle, 1, 4, 2, 10);
  for (int n = 1; n <= 4; ++n)
    for (long r = 2; r <= 10; ++r)
      EXPECT_EQ(closed_form_pidegree({FamilyKind::WeylSingle, n}, r), int_pow(Int(r), n));
  EXPECT_LT(c.seconds(), 5.0);
}

TEST(Acceptance, C03_QuantumMatricesSingleParameter) {
  Criterion c(3, "quantum matrices single-parameter PI degrees, n=2..3, m=2..9");
  sweep_family(FamilyKind::MatricesSingle, 2, 3, 2, 9);
  EXPECT_LT(c.seconds(), 10.0);
}

TEST(Acceptance, C04_QuantumEuclideanEvenAndSymplectic) {
  Criterion c(4, "quantum Euclidean even (n=2..5) and symplectic (n=1..4), r=2..13");
  sweep_family(FamilyKind::EuclideanEven, 2, 5, 2, 13);
  sweep_family(FamilyKind::Symplectic, 1, 4, 2, 13);
  EXPECT_LT(c.seconds(), 10.0);
}

TEST(Acceptance, C05_SmithFormShapeTargets) {
  Criterion c(5, "Smith-form shape targets for n <= 5");
  auto counts = [](const IntMatrix& m) {
    std::map<long, int> out;
    for (const auto& d : smith_normal_form(m).invariant_factors) out[d.get_si()]++;
    return out;
  };
  for (int n = 1; n <= 5; ++n) {
    std::map<long, int> want;
    if (n % 2 == 1) {
      want[1] = n + 1;
      if (n > 1) want[4] = n - 1;
      want[0] = 1;
    } else {
      want[1] = n;
      want[2] = 2;
      if (n > 2) want[4] = n - 2;
      want[0] = 1;
    }
    EXPECT_EQ(counts(family_matrix({FamilyKind::EuclideanOdd, n}, {})), want)
        << "euclidean-odd n=" << n;
  }
  for (int n = 1; n <= 5; ++n) {
    std::map<long, int> want;
    if (n % 2 == 0) {
      want[1] = n;
      want[4] = n;
    } else {
      if (n > 1) want[1] = n - 1;
      want[2] = 2;
      if (n > 1) want[4] = n - 1;
    }
    EXPECT_EQ(counts(family_matrix({FamilyKind::Symplectic, n}, {})), want) << "symplectic n=" << n;
  }
  for (int n = 2; n <= 5; ++n) {
    std::map<long, int> want;
    if (n % 2 == 0) {
      want[1] = n;
      if (n > 2) want[4] = n - 2;
      want[0] = 2;
    } else {
      want[1] = n - 1;
      want[2] = 2;
      if (n > 3) want[4] = n - 3;
      want[0] = 2;
    }
    EXPECT_EQ(counts(family_matrix({FamilyKind::EuclideanEven, n}, {})), want)
        << "euclidean-even n=" << n;
  }
}

TEST(Acceptance, C06_SecondQuantizedWeylWorkedExample) {
  Criterion c(6, "second quantized Weyl algebra: four Ore generators and step images");
  FamilyId id{FamilyKind::WeylMulti, 2};
  SpecPtr spec = family_ore_spec(id, family_generic_field(id));
  const FieldPtr& f = spec->field;
  Scalar q1 = f->param("q1"), q2 = f->param("q2");
  RemovalResult res = iterate_removal(spec);
  ASSERT_EQ(res.steps.size(), 2u);
  ASSERT_EQ(res.ore_generators.size(), 4u);
  EXPECT_EQ(res.lambda_final, spec->lambda);

  // first-step images
  {
    TermMap expect;
    Scalar coeff = (q2 - f->one()).inverse();
    ore::add_term(expect, ExpVec{0, 0, 1, 0}, f->one());
    ore::add_term(expect, ExpVec{1, 1, 0, -1}, coeff * (q1 - f->one()));
    ore::add_term(expect, ExpVec{0, 0, 0, -1}, coeff);
    EXPECT_EQ(res.steps[0].images.at(2).terms, expect);
    EXPECT_EQ(res.steps[0].images.at(0).terms, element_var(spec, 0).terms);
    EXPECT_EQ(res.steps[0].images.at(1).terms, element_var(spec, 1).terms);
    EXPECT_EQ(res.steps[0].images.at(3).terms, element_var(spec, 3).terms);
  }
  // second-step images
  {
    TermMap expect;
    ore::add_term(expect, ExpVec{1, 0, 0, 0}, f->one());
    ore::add_term(expect, ExpVec{0, -1, 0, 0}, (q1 - f->one()).inverse());
    EXPECT_EQ(res.steps[1].images.at(0).terms, expect);
    EXPECT_EQ(res.steps[1].images.at(2).terms, element_var(spec, 2).terms);
    EXPECT_EQ(res.steps[1].images.at(3).terms, element_var(spec, 3).terms);
  }
  // the four generators, up to nonzero scalar
  auto proportional = [](const TermMap& a, const TermMap& b) {
    if (a.size() != b.size() || a.empty()) return a.size() == b.size();
    Scalar ratio = a.begin()->second / b.begin()->second;
    auto ib = b.begin();
    for (const auto& [e, co] : a) {
      if (e != ib->first || co != ib->second * ratio) return false;
      ++ib;
    }
    return true;
  };
  TermMap g_y1, g_y2;
  ore::add_term(g_y1, ExpVec{1, 1, 0, 0}, q1 - f->one());
  ore::add_term(g_y1, ExpVec{0, 0, 0, 0}, f->one());
  ore::add_term(g_y2, ExpVec{0, 0, 1, 1}, q2 - f->one());
  ore::add_term(g_y2, ExpVec{1, 1, 0, 0}, q1 - f->one());
  ore::add_term(g_y2, ExpVec{0, 0, 0, 0}, f->one());
  EXPECT_TRUE(proportional(res.ore_generators[0].terms, g_y1));
  EXPECT_EQ(res.ore_generators[1].terms, element_var(spec, 1).terms);
  EXPECT_TRUE(proportional(res.ore_generators[2].terms, g_y2));
  EXPECT_EQ(res.ore_generators[3].terms, element_var(spec, 3).terms);
}

TEST(Acceptance, C07_HomomorphismSuite) {
  Criterion c(7, "f(rs)=f(r)f(s) and x f(r)=f(tau(r))x, 100 pairs per family, generic + cyclotomic");
  VerifyReport rep = verify_removal();
  for (const auto& check : rep.checks)
    EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
}

TEST(Acceptance, C08_OracleEquivalence) {
  Criterion c(8, "image cardinality vs brute force on 200 random skew matrices, n<=4, ell<=8");
  std::mt19937_64 rng(20260810);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 1 + static_cast<int>(rng() % 4);
    long ell = 1 + static_cast<long>(rng() % 8);
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        long v = static_cast<long>(rng() % 11) - 5;
        a.at(i, j) = v;
        a.at(j, i) = -v;
      }
    EXPECT_EQ(image_cardinality(a, ell), brute_force_image(a, ell))
        << "ell=" << ell << "\n" << a.to_string();
  }
}

TEST(Acceptance, C09_QArithmeticAndDividedPowers) {
  Criterion c(9, "Pascal identities, binomial vanishing at roots, d_i(y^i)=1 up to 2l");
  for (long n = 2; n <= 20; ++n)
    for (long m = 1; m < n; ++m) {
      EXPECT_EQ(t_binomial(n, m),
                t_binomial(n - 1, m) + LaurentIntPoly(n - m, Int(1)) * t_binomial(n - 1, m - 1));
      EXPECT_EQ(t_binomial(n, m),
                t_binomial(n - 1, m - 1) + LaurentIntPoly(m, Int(1)) * t_binomial(n - 1, m));
    }
  for (long l = 2; l <= 8; ++l) {
    FieldPtr f = ScalarField::cyclotomic(l);
    for (long i = 1; i < l; ++i)
      EXPECT_TRUE(evaluate_at_root(t_binomial(l, i), f).is_zero()) << "l=" << l << " i=" << i;
  }
  // A_1^q at a primitive l-th root of unity: d_i(y^i) = 1 for i up to 2l
  for (long l : {2L, 3L, 4L, 5L}) {
    FamilyId id{FamilyKind::WeylSingle, 1};
    ExponentAssignment a = default_assignment(id, l);
    SpecPtr spec = family_ore_spec(id, family_cyclotomic_field(id, a));
    HigherDerivation hd(spec, 1);
    for (long i = 1; i <= 2 * l; ++i) {
      OreElement got = hd.apply(static_cast<int>(i), element_var(spec, 0, static_cast<int>(i)));
      EXPECT_EQ(got.terms, element_const(spec, spec->field->one()).terms)
          << "l=" << l << " i=" << i;
    }
  }
}

TEST(Acceptance, C10_CharacteristicPolynomialIdentity) {
  Criterion c(10, "chi_n identity and recursion for n <= 6");
  std::vector<LaurentIntPoly> chi(7);
  for (int n = 1; n <= 6; ++n) {
    chi[n] = testsupport::char_poly(testsupport::quantum_matrices_block(n));
    LaurentIntPoly expect =
        testsupport::binomial_power(1, n) + testsupport::binomial_power(-1, n);
    auto half = expect.divide_exact(LaurentIntPoly(Int(2)));
    ASSERT_TRUE(half.has_value());
    EXPECT_EQ(chi[n], *half) << "n=" << n;
  }
  for (int n = 3; n <= 6; ++n)
    EXPECT_EQ(chi[n], chi[n - 1] * testsupport::binomial_power(1, 1) -
                          testsupport::binomial_power(-1, n - 1))
        << "recursion at n=" << n;
}

}  // namespace
}  // namespace qskew

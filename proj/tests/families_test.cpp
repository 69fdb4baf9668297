#include "qskew/families.hpp"

#include <gtest/gtest.h>

#include <map>

#include "qskew/higher_derivation.hpp"
#include "qskew/pidegree.hpp"

namespace qskew {
namespace {

IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

// multiset of invariant factors
std::map<long, int> factor_counts(const std::vector<Int>& v) {
  std::map<long, int> c;
  for (const auto& d : v) c[d.get_si()]++;
  return c;
}

TEST(FamilyMatrix, SmallCasesEntryByEntry) {
  EXPECT_EQ(family_matrix({FamilyKind::EuclideanOdd, 1}, {}),
            from_rows({{0, 1, -1}, {-1, 0, 0}, {1, 0, 0}}));
  EXPECT_EQ(family_matrix({FamilyKind::EuclideanOdd, 2}, {}),
            from_rows({{0, 1, -1, 1, -1},
                       {-1, 0, 0, 1, -1},
                       {1, 0, 0, 1, -1},
                       {-1, -1, -1, 0, 0},
                       {1, 1, 1, 0, 0}}));
  EXPECT_EQ(family_matrix({FamilyKind::WeylSingle, 1}, {}), from_rows({{0, -1}, {1, 0}}));
  EXPECT_EQ(family_matrix({FamilyKind::WeylSingle, 2}, {}),
            from_rows({{0, -1, 0, -1}, {1, 0, 0, 1}, {0, 0, 0, -1}, {1, -1, 1, 0}}));
  EXPECT_EQ(family_matrix({FamilyKind::MatricesSingle, 2}, {}),
            from_rows({{0, 1, 1, 0}, {-1, 0, 0, 1}, {-1, 0, 0, 1}, {0, -1, -1, 0}}));
  EXPECT_EQ(family_matrix({FamilyKind::EuclideanEven, 2}, {}),
            from_rows({{0, 0, -1, 1}, {0, 0, -1, 1}, {1, 1, 0, 0}, {-1, -1, 0, 0}}));
  EXPECT_EQ(family_matrix({FamilyKind::Symplectic, 1}, {}), from_rows({{0, 2}, {-2, 0}}));
  EXPECT_EQ(family_matrix({FamilyKind::Symplectic, 2}, {}),
            from_rows({{0, 2, 1, 1}, {-2, 0, -1, -1}, {-1, 1, 0, 2}, {-1, 1, -2, 0}}));
}

TEST(FamilyMatrix, SkewSymmetricAndMultiparameterConsistency) {
  ExponentAssignment weyl{7, {{"q1", 2}, {"q2", 3}, {"g12", 5}}};
  EXPECT_TRUE(family_matrix({FamilyKind::WeylMulti, 2}, weyl).is_skew_symmetric());
  ExponentAssignment kpq{7, {{"q1", 2}, {"q2", 3}, {"p1", 1}, {"p2", 5}, {"g12", 4}}};
  EXPECT_TRUE(family_matrix({FamilyKind::KPQ, 2}, kpq).is_skew_symmetric());
  ExponentAssignment mat{7, {{"l", 3}, {"p21", 2}, {"p31", 1}, {"p32", 5}}};
  EXPECT_TRUE(family_matrix({FamilyKind::MatricesMulti, 3}, mat).is_skew_symmetric());
  for (int n = 1; n <= 5; ++n) {
    EXPECT_TRUE(family_matrix({FamilyKind::EuclideanOdd, n}, {}).is_skew_symmetric());
    EXPECT_TRUE(family_matrix({FamilyKind::Symplectic, n}, {}).is_skew_symmetric());
    if (n >= 2) {
      EXPECT_TRUE(family_matrix({FamilyKind::EuclideanEven, n}, {}).is_skew_symmetric());
    }
  }
}

TEST(FamilyOreSpec, QSkewParametersMatchPaper) {
  // euclidean odd: each (tau_i, delta_i) is q^{-2}-skew
  {
    FamilyId id{FamilyKind::EuclideanOdd, 2};
    SpecPtr s = family_ore_spec(id, family_generic_field(id));
    Scalar q = s->field->param("q");
    for (int i = 1; i <= 2; ++i) {
      QSkewCheck c = check_qskew(s, 2 * i);
      EXPECT_TRUE(c.ok) << c.message;
      EXPECT_EQ(c.q, q.pow(-2));
    }
  }
  // multiparameter Weyl: q_i-skew
  {
    FamilyId id{FamilyKind::WeylMulti, 2};
    SpecPtr s = family_ore_spec(id, family_generic_field(id));
    for (int i = 0; i < 2; ++i) {
      QSkewCheck c = check_qskew(s, 2 * i + 1);
      EXPECT_TRUE(c.ok) << c.message;
      EXPECT_EQ(c.q, s->field->param(i == 0 ? "q1" : "q2"));
    }
  }
  // quantum matrices: lambda^{-1}-skew
  {
    FamilyId id{FamilyKind::MatricesMulti, 2};
    SpecPtr s = family_ore_spec(id, family_generic_field(id));
    for (int v = 0; v < 4; ++v) {
      QSkewCheck c = check_qskew(s, v);
      EXPECT_TRUE(c.ok) << c.message;
      EXPECT_EQ(c.q, s->field->param("l").pow(-1));
    }
  }
  // K_{n,Gamma}^{P,Q}: q_i p_i^{-1}-skew
  {
    FamilyId id{FamilyKind::KPQ, 2};
    SpecPtr s = family_ore_spec(id, family_generic_field(id));
    QSkewCheck c = check_qskew(s, 3);
    EXPECT_TRUE(c.ok) << c.message;
    EXPECT_EQ(c.q, s->field->param("q2") * s->field->param("p2").inverse());
  }
}

TEST(FamilyOreSpec, Weyl2MatchesWorkedExample) {
  FamilyId id{FamilyKind::WeylMulti, 2};
  SpecPtr s = family_ore_spec(id, family_generic_field(id));
  const FieldPtr& f = s->field;
  // tau_2(y_1) = q_1 y_1 and delta_2(y_1) = 1
  EXPECT_EQ(s->lambda[1][0], f->param("q1"));
  ASSERT_TRUE(s->delta_image(1, 0) != nullptr);
  EXPECT_EQ(*s->delta_image(1, 0), (TermMap{{ExpVec{0, 0, 0, 0}, f->one()}}));
  // delta_4(y_2) = (q_1 - 1) y_1 x_1 + 1
  ASSERT_TRUE(s->delta_image(3, 2) != nullptr);
  TermMap img;
  ore::add_term(img, ExpVec{1, 1, 0, 0}, f->param("q1") - f->one());
  ore::add_term(img, ExpVec{0, 0, 0, 0}, f->one());
  EXPECT_EQ(*s->delta_image(3, 2), img);
  // tau_4(y_1) = q_1 gamma_12 y_1, tau_4(x_1) = q_1^{-1} gamma_21 x_1
  EXPECT_EQ(s->lambda[3][0], f->param("q1") * f->param("g12"));
  EXPECT_EQ(s->lambda[3][1], f->param("q1").inverse() * f->param("g12").inverse());
}

TEST(FamilyOreSpec, EuclideanOddDeltaUsesSquareRoot) {
  FamilyId id{FamilyKind::EuclideanOdd, 1};
  SpecPtr s = family_ore_spec(id, family_generic_field(id));
  const FieldPtr& f = s->field;
  Scalar sq = f->param("s");
  ASSERT_TRUE(s->delta_image(2, 1) != nullptr);
  // delta_1(y_1) = (q^{1/2} - q^{3/2}) w^2 with an empty sum
  EXPECT_EQ(*s->delta_image(2, 1), (TermMap{{ExpVec{2, 0, 0}, sq - sq.pow(3)}}));
  // a field without the square root is rejected
  EXPECT_THROW(family_ore_spec(id, ScalarField::generic({"q"})), DomainError);
}

TEST(FamilyOreSpec, KpqRejectsEqualParameters) {
  ExponentAssignment bad{5, {{"q1", 2}, {"q2", 1}, {"p1", 2}, {"p2", 3}, {"g12", 1}}};
  FieldPtr f = family_cyclotomic_field({FamilyKind::KPQ, 2}, bad);
  EXPECT_THROW(family_ore_spec({FamilyKind::KPQ, 2}, f), DomainError);
}

TEST(ClosedForm, Examples) {
  EXPECT_EQ(closed_form_pidegree({FamilyKind::EuclideanOdd, 2}, 5), Int(25));
  EXPECT_EQ(closed_form_pidegree({FamilyKind::EuclideanOdd, 2}, 8), Int(32));
  EXPECT_EQ(closed_form_pidegree({FamilyKind::MatricesSingle, 3}, 5), Int(125));
  EXPECT_EQ(closed_form_pidegree({FamilyKind::WeylSingle, 3}, 4), Int(64));
  EXPECT_EQ(closed_form_pidegree({FamilyKind::Symplectic, 2}, 4), Int(4));
  EXPECT_THROW(closed_form_pidegree({FamilyKind::WeylMulti, 2}, 5), NoClosedForm);
}

TEST(SmithShapes, InvariantFactorMultisetsUpToN5) {
  for (int n = 1; n <= 5; ++n) {
    auto counts = factor_counts(
        smith_normal_form(family_matrix({FamilyKind::EuclideanOdd, n}, {})).invariant_factors);
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
    EXPECT_EQ(counts, want) << "euclidean-odd n=" << n;
  }
  for (int n = 1; n <= 5; ++n) {
    auto counts = factor_counts(
        smith_normal_form(family_matrix({FamilyKind::Symplectic, n}, {})).invariant_factors);
    std::map<long, int> want;
    if (n % 2 == 0) {
      want[1] = n;
      want[4] = n;
    } else {
      if (n > 1) want[1] = n - 1;
      want[2] = 2;
      if (n > 1) want[4] = n - 1;
    }
    EXPECT_EQ(counts, want) << "symplectic n=" << n;
  }
  for (int n = 2; n <= 5; ++n) {
    auto counts = factor_counts(
        smith_normal_form(family_matrix({FamilyKind::EuclideanEven, n}, {})).invariant_factors);
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
    EXPECT_EQ(counts, want) << "euclidean-even n=" << n;
  }
}

// Row-reduced forms of the small cases arise from the family matrices by
// image-preserving row operations, so both must induce the same image
// cardinality modulo every root order.
TEST(SmithShapes, RowReducedFormsPreserveImage) {
  struct Case {
    FamilyId id;
    IntMatrix reduced;
  };
  std::vector<Case> cases;
  cases.push_back({{FamilyKind::EuclideanOdd, 1},
                   from_rows({{1, 0, 0}, {0, 1, -1}, {0, 0, 0}})});
  cases.push_back({{FamilyKind::EuclideanOdd, 2},
                   from_rows({{1, 0, 0, 1, -1},
                              {0, 1, -1, 1, -1},
                              {0, 0, 2, -2, 2},
                              {0, 0, 0, 2, -2},
                              {0, 0, 0, 0, 0}})});
  cases.push_back({{FamilyKind::EuclideanEven, 2},
                   from_rows({{1, 1, 0, 0}, {0, 0, -1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}})});
  cases.push_back({{FamilyKind::EuclideanEven, 3},
                   from_rows({{1, 1, 0, 0, -1, 1},
                              {0, 0, -1, 1, -1, 1},
                              {0, 0, 0, 2, 0, 0},
                              {0, 0, 0, 0, -2, 2},
                              {0, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0}})});
  cases.push_back({{FamilyKind::Symplectic, 1}, from_rows({{0, 2}, {-2, 0}})});
  cases.push_back({{FamilyKind::Symplectic, 2},
                   from_rows({{-1, 1, 0, 2}, {0, 1, 1, 1}, {0, 0, -4, -4}, {0, 0, 0, -4}})});
  for (const auto& c : cases) {
    IntMatrix fam = family_matrix(c.id, {});
    for (long ell = 2; ell <= 13; ++ell)
      EXPECT_EQ(image_cardinality(fam, ell), image_cardinality(c.reduced, ell))
          << family_kind_name(c.id.kind) << " n=" << c.id.n << " ell=" << ell;
  }
}

TEST(ClosedForm, MatchesComputedPIDegreeAcrossRanges) {
  auto check = [](FamilyKind kind, int n_lo, int n_hi, long r_lo, long r_hi) {
    for (int n = n_lo; n <= n_hi; ++n)
      for (long r = r_lo; r <= r_hi; ++r) {
        FamilyId id{kind, n};
        IntMatrix m = family_matrix(id, {});
        EXPECT_EQ(pi_degree(m, r).pi_degree, closed_form_pidegree(id, r))
            << family_kind_name(kind) << " n=" << n << " r=" << r;
      }
  };
  check(FamilyKind::EuclideanOdd, 1, 5, 2, 13);
  check(FamilyKind::WeylSingle, 1, 4, 2, 10);
  check(FamilyKind::MatricesSingle, 2, 3, 2, 9);
  check(FamilyKind::EuclideanEven, 2, 5, 2, 13);
  check(FamilyKind::Symplectic, 1, 4, 2, 13);
}

TEST(Families, LiftDivisibilityCertificateUpToN6) {
  std::vector<FamilyId> ids = {{FamilyKind::EuclideanOdd, 2},
                               {FamilyKind::WeylMulti, 2},
                               {FamilyKind::KPQ, 2},
                               {FamilyKind::MatricesMulti, 2},
                               {FamilyKind::Symplectic, 2},
                               {FamilyKind::EuclideanEven, 2}};
  for (FamilyId id : ids) {
    SpecPtr s = family_ore_spec(id, family_generic_field(id));
    for (int v = 0; v < s->size(); ++v) {
      if (!s->has_delta(v)) continue;
      HigherDerivation hd(s, v);
      for (int n = 1; n <= 6; ++n)
        for (int j = 0; j < v; ++j)
          EXPECT_NO_THROW((void)hd.image(n, j))
              << family_kind_name(id.kind) << " var " << v << " n=" << n;
    }
  }
}

TEST(Families, HigherDerivationPropertiesOnGenerators) {
  FamilyId id{FamilyKind::WeylMulti, 2};
  SpecPtr s = family_ore_spec(id, family_generic_field(id));
  HigherDerivation hd(s, 3);
  std::vector<OreElement> samples;
  for (int j = 0; j < 3; ++j) samples.push_back(element_var(s, j));
  samples.push_back(element_var(s, 0) * element_var(s, 2));
  HDReport rep = check_hd_properties(hd, samples, 4);
  EXPECT_TRUE(rep.passed) << rep.to_string();
}

TEST(Families, RemovalReachesTheFamilyTorus) {
  struct Case {
    FamilyId id;
    ExponentAssignment assign;
  };
  std::vector<Case> cases = {
      {{FamilyKind::EuclideanOdd, 1}, default_assignment({FamilyKind::EuclideanOdd, 1}, 0)},
      {{FamilyKind::EuclideanOdd, 2}, default_assignment({FamilyKind::EuclideanOdd, 2}, 0)},
      {{FamilyKind::WeylSingle, 2}, default_assignment({FamilyKind::WeylSingle, 2}, 0)},
      {{FamilyKind::WeylMulti, 2}, ExponentAssignment{0, {{"q1", 2}, {"q2", 3}, {"g12", 1}}}},
      {{FamilyKind::KPQ, 2},
       ExponentAssignment{0, {{"q1", 2}, {"q2", 3}, {"p1", 1}, {"p2", 5}, {"g12", 4}}}},
      {{FamilyKind::EuclideanEven, 2}, default_assignment({FamilyKind::EuclideanEven, 2}, 0)},
      {{FamilyKind::Symplectic, 2}, default_assignment({FamilyKind::Symplectic, 2}, 0)},
      {{FamilyKind::MatricesSingle, 2}, default_assignment({FamilyKind::MatricesSingle, 2}, 0)},
      {{FamilyKind::MatricesMulti, 2},
       ExponentAssignment{0, {{"l", 3}, {"p21", 2}}}},
  };
  for (const auto& c : cases) {
    SpecPtr s = family_ore_spec(c.id, family_generic_field(c.id));
    RemovalResult res = iterate_removal(s);
    EXPECT_EQ(res.lambda_final, s->lambda) << family_kind_name(c.id.kind);
    EXPECT_EQ(static_cast<int>(res.ore_generators.size()), s->size());
    // the torus exponent matrix under the assignment is the family matrix
    EXPECT_EQ(lambda_exponent_matrix(s, c.assign), family_matrix(c.id, c.assign))
        << family_kind_name(c.id.kind);
  }
}

}  // namespace
}  // namespace qskew

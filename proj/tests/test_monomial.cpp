#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "sepcrit/families.hpp"
#include "sepcrit/monomial.hpp"
#include "sepcrit/oracle.hpp"

using namespace sepcrit;

namespace {

IndexTuple t(const char* s) { return IndexTuple::parse(s); }

double acin_diag(const AcinFamilyParams& a, int one_based) {
  return acin_state(a).diagonal(static_cast<BasisIndex>(one_based - 1));
}

}  // namespace

TEST(Monomial, BalanceValidator) {
  EXPECT_TRUE(fullsep_base_monomial().weights().size() == 6);
  EXPECT_EQ(fullsep_base_monomial().root(), 3);
  EXPECT_EQ(fullsep_base_monomial().degree(), 6);
  EXPECT_THROW(MonomialCriterion::from_strings("bad", {{"001", 1}, {"010", 1}}, 1), std::invalid_argument);
  EXPECT_THROW(MonomialCriterion::from_strings("bad", {{"001", 1}, {"110", 1}}, 2), std::invalid_argument);
  EXPECT_THROW(MonomialCriterion::from_strings("bad", {{"001", 0}, {"110", 1}}, 1), std::invalid_argument);
  EXPECT_THROW(MonomialCriterion::from_strings("bad", {{"001", 1}, {"10", 1}}, 1), std::invalid_argument);
  EXPECT_NO_THROW(MonomialCriterion::from_strings("ok", {{"001", 1}, {"110", 1}}, 1));
}

TEST(Monomial, SingleSubstitutionOnAcin) {
  const auto m = MonomialCriterion::from_strings("sub", {{"000", 1}, {"011", 2}, {"100", 1}, {"101", 1}, {"110", 1}}, 3);
  const auto r = fullsep_monomial(acin_state({2, 2, 1}), m);
  // rho_11 rho_44^2 rho_55 rho_66 rho_77 = 1 * 1 * 1 * 1/2 * 1/2.
  EXPECT_NEAR(r.rhs, std::pow(0.25, 1.0 / 6), 1e-14);
  EXPECT_NEAR(r.lhs, 1.0, 1e-15);
  EXPECT_TRUE(r.violated);
}

TEST(Monomial, QuarticCombination) {
  const auto m = MonomialCriterion::from_strings("q", {{"001", 1}, {"010", 1}, {"100", 1}, {"111", 1}}, 2);
  const AcinFamilyParams a{0.7, 1.9, 2.5};
  const auto r = fullsep_monomial(acin_state(a), m);
  const double expected = std::pow(acin_diag(a, 2) * acin_diag(a, 3) * acin_diag(a, 5) * acin_diag(a, 8), 0.25);
  EXPECT_NEAR(r.rhs, expected, 1e-14);
}

TEST(Monomial, EqualityOnProductStates) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 2 + static_cast<int>(s % 4);
    const auto m = random_balanced_monomial(n, 1 + static_cast<int>(s % 5), s);
    ASSERT_TRUE(MonomialCriterion::is_balanced(m.weights(), m.root()));
    const auto rho = DensityMatrix::from_pure(random_pure_product(n, 1000 + s));
    const auto r = fullsep_monomial(rho, m);
    EXPECT_NEAR(r.margin, 0.0, 1e-10) << m.name();
  }
  for (const auto& m : three_qubit_substitution_monomials()) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto r = fullsep_monomial(DensityMatrix::from_pure(random_pure_product(3, s)), m);
      EXPECT_NEAR(r.margin, 0.0, 1e-10) << m.name();
    }
  }
}

TEST(Monomial, XStateAgreesWithDense) {
  const auto m = random_balanced_monomial(5, 3, 77);
  const auto x = ghz_white_noise(5, 0.4);
  const auto a = fullsep_monomial(x, m);
  const auto b = fullsep_monomial(x.to_dense(), m);
  EXPECT_NEAR(a.lhs, b.lhs, 1e-15);
  EXPECT_NEAR(a.rhs, b.rhs, 1e-14);
}

TEST(Monomial, ZeroDiagonalGivesZeroBound) {
  const auto r = fullsep_monomial(DensityMatrix::from_pure(ghz(3)), fullsep_base_monomial());
  EXPECT_DOUBLE_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.violated);
}

TEST(Substitution, Calculus) {
  const auto base = fullsep_base_monomial();
  const auto sub = substitute(base, "s", t("001"), t("010"), t("000"), t("011"));
  EXPECT_EQ(sub.weights().at(t("011")), 2);
  EXPECT_EQ(sub.weights().at(t("000")), 1);
  EXPECT_EQ(sub.weights().count(t("001")), 0u);
  EXPECT_THROW(substitute(base, "s", t("000"), t("010"), t("001"), t("011")), std::invalid_argument);
  // Substituting into an unbalanced result is rejected.
  EXPECT_THROW(substitute(base, "s", t("001"), t("010"), t("000"), t("000")), std::invalid_argument);
}

TEST(Substitution, SuiteContents) {
  const auto suite = three_qubit_substitution_monomials();
  ASSERT_EQ(suite.size(), 8u);
  std::set<std::map<IndexTuple, int>> distinct;
  for (const auto& m : suite) {
    EXPECT_TRUE(MonomialCriterion::is_balanced(m.weights(), m.root())) << m.name();
    distinct.insert(m.weights());
  }
  EXPECT_EQ(distinct.size(), suite.size());
  EXPECT_EQ(suite.front().weights(), fullsep_base_monomial().weights());
  // The first substitution is the rho_11 rho_44^2 rho_55 rho_66 rho_77 variant.
  EXPECT_EQ(suite[1].weights(),
            (std::map<IndexTuple, int>{{t("000"), 1}, {t("011"), 2}, {t("100"), 1}, {t("101"), 1}, {t("110"), 1}}));
  EXPECT_EQ(suite.back().root(), 2);
}

TEST(Substitution, AcinDetection) {
  // Entry arithmetic: the 66.77 -> 55.88 substitution catches lambda2 lambda3 < lambda4,
  // the 22.33 -> 11.44 one catches lambda4 < lambda2 lambda3.
  const auto low = substitution_suite(acin_state({0.5, 0.5, 1}));
  EXPECT_TRUE(low.any_violated());
  const auto high = substitution_suite(acin_state({2, 2, 1}));
  EXPECT_TRUE(high.any_violated());
  const auto separable = substitution_suite(acin_state({1, 1, 1}));
  EXPECT_FALSE(separable.any_violated());
  for (const auto& r : separable.reports) EXPECT_GE(r.rhs, 1.0 - 1e-14);
  const auto on_product = substitution_suite(DensityMatrix::from_pure(random_pure_product(3, 5)));
  EXPECT_FALSE(on_product.any_violated());
}

TEST(Substitution, ProductMixtureSoundness) {
  for (const auto& m : three_qubit_substitution_monomials()) {
    const auto r = soundness_sweep(m, 2000, 99);
    EXPECT_TRUE(r.passed) << m.name() << " " << r.max_margin;
  }
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto r = soundness_sweep(random_balanced_monomial(4, 3, s), 500, s);
    EXPECT_TRUE(r.passed) << r.criterion_id << " " << r.max_margin;
  }
}

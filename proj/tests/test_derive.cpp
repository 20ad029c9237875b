#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "sepcrit/derive.hpp"
#include "sepcrit/families.hpp"
#include "sepcrit/oracle.hpp"
#include "sepcrit/registry.hpp"

using namespace sepcrit;

namespace {

using Sqrt = std::tuple<BasisIndex, BasisIndex, double>;
using Diag = std::pair<BasisIndex, double>;

std::vector<Sqrt> sqrt_terms(const DerivedCriterion& c) {
  std::vector<Sqrt> out;
  for (const auto& t : c.sqrt_terms()) out.emplace_back(t.a, t.b, t.coefficient);
  return out;
}

std::vector<Diag> diag_terms(const DerivedCriterion& c) {
  std::vector<Diag> out;
  for (const auto& t : c.diagonal_terms()) out.emplace_back(t.index, t.coefficient);
  return out;
}

std::vector<BasisIndex> weight(int n, int w) { return indices_of_weight(n, w); }

DensityMatrix random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  return DensityMatrix(a * a.adjoint());
}

void expect_same_values(const DerivedCriterion& derived, const std::string& builtin, int n) {
  std::mt19937_64 rng(n * 31 + 1);
  const auto c = make_criterion(builtin);
  for (int k = 0; k < 20; ++k) {
    const auto r = random_state(n, rng);
    const auto a = derived.evaluate(r);
    const auto b = c.evaluate(r);
    EXPECT_NEAR(a.lhs, b.lhs, 1e-12 * r.trace()) << builtin;
    EXPECT_NEAR(a.rhs, b.rhs, 1e-12 * r.trace()) << builtin;
  }
}

}  // namespace

TEST(EstimateOffdiagonal, CrossingFourQubits) {
  // (0001),(0010) differ on qubits C and D; a crossing cut must split them.
  const auto b1 = estimate_offdiagonal(IndexTuple::parse("0001"), IndexTuple::parse("0010"), Bipartition::parse("ABC|D"));
  EXPECT_EQ(b1.kind, BoundKind::kCrossing);
  EXPECT_EQ(b1.first, IndexTuple::parse("0000").index());
  EXPECT_EQ(b1.second, IndexTuple::parse("0011").index());
  const auto b2 = estimate_offdiagonal(IndexTuple::parse("0001"), IndexTuple::parse("0010"), Bipartition::parse("AC|BD"));
  EXPECT_EQ(b2.kind, BoundKind::kCrossing);
  EXPECT_EQ(b2.first, 0u);
  EXPECT_EQ(b2.second, 3u);
  // Under AB|CD both differing qubits sit on one side.
  const auto b3 = estimate_offdiagonal(IndexTuple::parse("0001"), IndexTuple::parse("0010"), Bipartition::parse("AB|CD"));
  EXPECT_EQ(b3.kind, BoundKind::kInternal);
}

TEST(EstimateOffdiagonal, ThreeQubitExamples) {
  const auto internal = estimate_offdiagonal(IndexTuple::parse("001"), IndexTuple::parse("010"), Bipartition::parse("A|BC"));
  EXPECT_EQ(internal.kind, BoundKind::kInternal);
  EXPECT_EQ(internal.first, 1u);
  EXPECT_EQ(internal.second, 2u);
  const auto crossing = estimate_offdiagonal(IndexTuple::parse("000"), IndexTuple::parse("111"), Bipartition::parse("A|BC"));
  EXPECT_EQ(crossing.kind, BoundKind::kCrossing);
  EXPECT_EQ(crossing.first, 3u);
  EXPECT_EQ(crossing.second, 4u);
  EXPECT_THROW(estimate_offdiagonal(IndexTuple::parse("000"), IndexTuple::parse("000"), Bipartition::parse("A|BC")),
               std::invalid_argument);
}

TEST(EstimateOffdiagonal, CrossingBoundIsTightOnProducts) {
  // For a pure state product across p, |rho_IJ| equals the crossing bound.
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto parts = all_bipartitions(4);
    const auto& p = parts[s % parts.size()];
    const auto rho = DensityMatrix::from_pure(random_pure_biseparable(4, p, s));
    for (BasisIndex i = 0; i < 16; ++i) {
      for (BasisIndex j = i + 1; j < 16; ++j) {
        const auto b = estimate_offdiagonal(IndexTuple(4, i), IndexTuple(4, j), p);
        if (b.kind == BoundKind::kCrossing) {
          EXPECT_NEAR(std::abs(rho(i, j)), std::sqrt(rho.diagonal(b.first) * rho.diagonal(b.second)), 1e-12);
        } else {
          EXPECT_LE(std::abs(rho(i, j)), 0.5 * (rho.diagonal(i) + rho.diagonal(j)) + 1e-12);
        }
      }
    }
  }
}

TEST(Derive, Ghz3) {
  const auto c = derive_biseparability_criterion(ghz(3), "d");
  EXPECT_EQ(c.offdiagonal_pairs(), (std::vector<std::pair<BasisIndex, BasisIndex>>{{0, 7}}));
  EXPECT_EQ(sqrt_terms(c), (std::vector<Sqrt>{{1, 6, 1.0}, {2, 5, 1.0}, {3, 4, 1.0}}));
  EXPECT_TRUE(diag_terms(c).empty());
  expect_same_values(c, "ghz3", 3);
}

TEST(Derive, W3) {
  const auto c = derive_biseparability_criterion(w(3), "d");
  EXPECT_EQ(c.offdiagonal_pairs(), (std::vector<std::pair<BasisIndex, BasisIndex>>{{1, 2}, {1, 4}, {2, 4}}));
  EXPECT_EQ(sqrt_terms(c), (std::vector<Sqrt>{{0, 3, 1.0}, {0, 5, 1.0}, {0, 6, 1.0}}));
  EXPECT_EQ(diag_terms(c), (std::vector<Diag>{{1, 0.5}, {2, 0.5}, {4, 0.5}}));
  expect_same_values(c, "w3", 3);
}

TEST(Derive, Ghz4) {
  const auto c = derive_biseparability_criterion(ghz(4), "d");
  std::vector<Sqrt> expected;
  for (BasisIndex i = 1; i < 8; ++i) expected.emplace_back(i, 15 - i, 1.0);
  EXPECT_EQ(sqrt_terms(c), expected);
  EXPECT_TRUE(diag_terms(c).empty());
  expect_same_values(c, "ghzN", 4);
}

TEST(Derive, W4) {
  const auto c = derive_biseparability_criterion(w(4), "d");
  std::vector<Sqrt> sq;
  for (BasisIndex i : weight(4, 2)) sq.emplace_back(0, i, 1.0);
  std::vector<Diag> dg;
  for (BasisIndex i : weight(4, 1)) dg.emplace_back(i, 1.0);
  EXPECT_EQ(sqrt_terms(c), sq);
  EXPECT_EQ(diag_terms(c), dg);
  EXPECT_EQ(c.offdiagonal_pairs().size(), 6u);
  expect_same_values(c, "w4", 4);
}

TEST(Derive, D4) {
  const auto c = derive_biseparability_criterion(dicke(4, 2), "d");
  std::vector<Sqrt> sq{{0, 15, 1.0}};
  for (BasisIndex i : weight(4, 1))
    for (BasisIndex j : weight(4, 3)) sq.emplace_back(std::min(i, j), std::max(i, j), 1.0);
  std::sort(sq.begin(), sq.end());
  std::vector<Diag> dg;
  for (BasisIndex i : weight(4, 2)) dg.emplace_back(i, 1.5);
  EXPECT_EQ(sqrt_terms(c), sq);
  EXPECT_EQ(diag_terms(c), dg);
  EXPECT_EQ(c.offdiagonal_pairs().size(), 15u);
  expect_same_values(c, "dicke4", 4);
}

TEST(Derive, SoundOnOtherTargets) {
  for (const auto* target : {"w5", "ghz5", "dicke5_2", "dicke4_1"}) {
    const auto rep = soundness_sweep(std::string("derived:") + target, make_criterion(std::string("derived:") + target).n_qubits,
                                     300, 5);
    EXPECT_TRUE(rep.passed) << target << " " << rep.max_margin;
  }
}

TEST(Derive, DetectsItsTarget) {
  for (const auto* target : {"w5", "ghz5", "dicke5_2"}) {
    const auto psi = parse_target(target);
    const auto c = derive_biseparability_criterion(psi, target);
    EXPECT_TRUE(c.evaluate(DensityMatrix::from_pure(psi)).violated) << target;
  }
}

TEST(Derive, RejectsDegenerateTargets) {
  EXPECT_THROW(derive_biseparability_criterion(dicke(3, 0)), std::invalid_argument);
}

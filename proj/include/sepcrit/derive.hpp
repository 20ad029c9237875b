#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sepcrit/criteria.hpp"

namespace sepcrit {

/// How |rho_IJ| is bounded for a pure state separable across a bipartition.
enum class BoundKind {
  /// I and J differ on both sides: |rho_IJ| = sqrt(rho_first rho_second),
  /// where first/second swap the side-A digits of I and J.
  kCrossing,
  /// I and J differ on one side only: positivity gives (rho_I + rho_J)/2.
  kInternal,
};

struct OffdiagonalBound {
  BoundKind kind;
  BasisIndex first;   ///< smaller index of the pair
  BasisIndex second;  ///< larger index of the pair
};

/// Per-bipartition bound for the entry at row I, column J (I != J).
OffdiagonalBound estimate_offdiagonal(const IndexTuple& i, const IndexTuple& j, const Bipartition& p);

/// A biseparability criterion assembled from a target state:
///   sum_{I<J in support} |rho_IJ| <= sum_t c_t sqrt(rho_a rho_b) + sum_I d_I rho_I.
class DerivedCriterion {
 public:
  struct SqrtTerm {
    BasisIndex a;
    BasisIndex b;
    double coefficient;
  };
  struct DiagonalTerm {
    BasisIndex index;
    double coefficient;
  };

  DerivedCriterion(std::string name, int n_qubits, std::vector<std::pair<BasisIndex, BasisIndex>> pairs,
                   std::vector<SqrtTerm> sqrt_terms, std::vector<DiagonalTerm> diagonal_terms);

  const std::string& name() const { return name_; }
  int n_qubits() const { return n_; }
  const std::vector<std::pair<BasisIndex, BasisIndex>>& offdiagonal_pairs() const { return pairs_; }
  /// Sorted by (a, b); a < b.
  const std::vector<SqrtTerm>& sqrt_terms() const { return sqrt_terms_; }
  /// Sorted by index.
  const std::vector<DiagonalTerm>& diagonal_terms() const { return diagonal_terms_; }

  CriterionReport evaluate(const DensityMatrix& rho) const;

 private:
  std::string name_;
  int n_;
  std::vector<std::pair<BasisIndex, BasisIndex>> pairs_;
  std::vector<SqrtTerm> sqrt_terms_;
  std::vector<DiagonalTerm> diagonal_terms_;
};

/// Derives a biseparability criterion whose left side is the off-diagonal
/// sum over the target's support.
///
/// For each bipartition every support pair is bounded as in
/// estimate_offdiagonal. Crossing bounds whose two diagonal indices both lie
/// in the support are relaxed to their arithmetic mean and folded into the
/// diagonal part; the others become square-root terms, whose coefficient is
/// the largest number of pairs sharing that term in any one bipartition.
/// Internal pairs are grouped into blocks of equal side-A (or side-B) digits
/// and bounded with sum_{i<j}|P_ij| <= (n-1)/2 Tr P. Each diagonal
/// coefficient is the maximum over bipartitions of what that bipartition
/// needs, so the inequality holds for every pure biseparable state and, by
/// concavity, for their mixtures.
///
/// Throws std::invalid_argument if the target has fewer than two support
/// indices or fewer than two qubits.
DerivedCriterion derive_biseparability_criterion(const PureState& target, std::string name = "derived");

}  // namespace sepcrit

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepcrit/criteria.hpp"
#include "sepcrit/families.hpp"

namespace sepcrit {

/// Three-qubit relabeling by a qubit permutation followed by bit flips.
/// New qubit j carries old qubit permutation[j], flipped if bit j of
/// `flips` (in basis-index layout) is set.
struct LocalRelabeling {
  std::array<int, 3> permutation{0, 1, 2};
  BasisIndex flips = 0;

  BasisIndex apply(BasisIndex old_index) const;
  BasisIndex invert(BasisIndex new_index) const;
  /// Maps a bipartition written in new labels back to the original qubits.
  Bipartition to_original(const Bipartition& in_new_labels) const;
  bool is_identity() const { return permutation == std::array<int, 3>{0, 1, 2} && flips == 0; }
};

/// Relabels the parameters; pairs move as whole units and mu keeps its sign.
GhzDiagonal3 relabel(const GhzDiagonal3& s, const LocalRelabeling& r);
/// Inverse of relabel.
GhzDiagonal3 unrelabel(const GhzDiagonal3& s, const LocalRelabeling& r);

struct NormalForm {
  GhzDiagonal3 state;  ///< lambda_1 >= lambda_2 >= lambda_3 >= lambda_4
  LocalRelabeling relabeling;
};

/// First relabeling (permutations in lexicographic order, then flips
/// ascending) that sorts lambda in non-increasing order.
NormalForm normal_form(const GhzDiagonal3& s);

/// The three-qubit GHZ criterion evaluated on the normal form.
CriterionReport ghz3_on_normal_form(const GhzDiagonal3& s);

/// True iff the normal form violates the GHZ criterion; exact for this family.
bool is_gme(const GhzDiagonal3& s);

struct ProductComponent {
  double probability = 0.0;
  PureState state;
};

/// Block rho^(kl)(lambda): pairs k and l (1-based) carry lambda on their
/// diagonal and sign_k * lambda, sign_l * lambda on their anti-diagonal.
struct BlockState {
  int k = 1;
  int l = 2;
  double lambda = 0.0;
  int sign_k = 1;
  int sign_l = 1;

  Matrix matrix() const;
  /// Side-split that makes the two components product states.
  Bipartition partition() const;
  /// Two components of probability 1/2 each; the block equals 4 lambda times
  /// their mixture.
  std::vector<ProductComponent> components() const;
};

/// Block with both anti-diagonal entries carrying `sign`.
BlockState block_state(int k, int l, double lambda, int sign = 1);

/// Greedy split of the residual weights for pairs 2..4, in normal form with
/// lambda_1 <= lambda_2 + lambda_3 + lambda_4.
struct GreedyAllocation {
  double alpha4 = 0.0;
  double alpha3 = 0.0;
  double alpha2 = 0.0;
  std::array<double, 3> residual{};  ///< lambda^(r)_2, lambda^(r)_3, lambda^(r)_4
};

GreedyAllocation greedy_allocation(const std::array<double, 4>& lambda);

/// One biseparable term: `weight` times the mixture of its components, each
/// a product state across `partition`.
struct BiseparableTerm {
  double weight = 0.0;
  Bipartition partition;
  std::vector<ProductComponent> components;
  std::string block;  ///< e.g. "(1,2)+-", pair labels in normal-form numbering
};

struct BiseparableDecomposition {
  std::vector<BiseparableTerm> terms;
  /// Fully separable remainder: weights of computational basis projectors.
  std::vector<std::pair<BasisIndex, double>> residue;

  Matrix reconstruct(int n_qubits) const;
  std::size_t block_count() const;
};

/// Raised when decompose is asked for a certificate of a GME state.
class GenuinelyEntangledError : public std::runtime_error {
 public:
  explicit GenuinelyEntangledError(CriterionReport report);
  const CriterionReport& report() const { return report_; }

 private:
  CriterionReport report_;
};

/// Constructive biseparability certificate for a three-qubit GHZ-diagonal
/// state. Throws GenuinelyEntangledError when is_gme(s).
BiseparableDecomposition decompose(const GhzDiagonal3& s);

struct VerificationResult {
  bool ok = false;
  double max_reconstruction_error = 0.0;
  double max_schmidt_defect = 0.0;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// Independent check: the mixture reconstructs rho entrywise within
/// 1e-10 * trace, every weight and probability is positive, and every
/// component's largest Schmidt coefficient across its partition equals its
/// norm within 1e-10 (relative).
VerificationResult verify_decomposition(const DensityMatrix& rho, const BiseparableDecomposition& d);

}  // namespace sepcrit

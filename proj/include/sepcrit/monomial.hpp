#pragma once

#include <map>
#include <string>
#include <vector>

#include "sepcrit/criteria.hpp"

namespace sepcrit {

/// Full-separability criterion |rho_{1,2^N}| <= (prod_I rho_I^{w_I})^{1/(2k)}.
///
/// Balance: for every qubit q the weights of tuples with digit 0 at q and
/// those with digit 1 at q both sum to k. Under that condition the right hand
/// side equals |rho_{1,2^N}| on every pure product state, and the weighted
/// geometric mean is concave, so the bound holds for all fully separable
/// states.
class MonomialCriterion {
 public:
  /// Throws std::invalid_argument if weights are nonpositive, tuple lengths
  /// disagree, or the balance condition fails.
  MonomialCriterion(std::string name, std::map<IndexTuple, int> weights, int root);

  /// Builds from "tuple:weight" pairs, e.g. {{"000", 1}, {"011", 2}}.
  static MonomialCriterion from_strings(std::string name,
                                        const std::vector<std::pair<std::string, int>>& weights,
                                        int root);

  const std::string& name() const { return name_; }
  int n_qubits() const { return n_; }
  int root() const { return root_; }
  int degree() const { return 2 * root_; }
  const std::map<IndexTuple, int>& weights() const { return weights_; }

  /// Whether `weights` with `root` satisfies the balance condition.
  static bool is_balanced(const std::map<IndexTuple, int>& weights, int root);

 private:
  std::string name_;
  int n_;
  std::map<IndexTuple, int> weights_;
  int root_;
};

CriterionReport fullsep_monomial(const DensityMatrix& rho, const MonomialCriterion& m);
CriterionReport fullsep_monomial(const XState& rho, const MonomialCriterion& m);

/// The base sextic bound on the six middle diagonals (k = 3).
MonomialCriterion fullsep_base_monomial();

/// The three-qubit substitution instances: the base monomial, the six single
/// substitutions (the first one, rho_22 rho_33 -> rho_11 rho_44, is the
/// rho_11 rho_44^2 rho_55 rho_66 rho_77 variant) and the quartic combination
/// rho_22 rho_33 rho_55 rho_88.
std::vector<MonomialCriterion> three_qubit_substitution_monomials();

/// Applies the substitution rho_a rho_b -> rho_c rho_d to a monomial
/// (removes one unit of a and b, adds one of c and d). Throws if a or b is
/// missing or the result is unbalanced.
MonomialCriterion substitute(const MonomialCriterion& m, const std::string& name, const IndexTuple& a,
                             const IndexTuple& b, const IndexTuple& c, const IndexTuple& d);

struct SuiteResult {
  std::vector<CriterionReport> reports;
  std::size_t best = 0;  ///< index of the largest margin
  bool any_violated() const;
  const CriterionReport& best_report() const { return reports.at(best); }
};

/// Evaluates every instance of three_qubit_substitution_monomials().
SuiteResult substitution_suite(const DensityMatrix& rho);

}  // namespace sepcrit

#pragma once

#include <span>
#include <string>

#include "sepcrit/density_matrix.hpp"

namespace sepcrit {

/// Relative tolerance for declaring a violation: margin > kViolationTolerance * trace.
inline constexpr double kViolationTolerance = 1e-10;

/// Outcome of one inequality lhs <= rhs evaluated on one state.
struct CriterionReport {
  std::string criterion_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< lhs - rhs
  double tolerance = 0.0;
  bool violated = false;  ///< margin > tolerance
};

/// Fills margin, tolerance and violated from lhs, rhs and the state's trace.
CriterionReport make_report(std::string id, double lhs, double rhs, double trace);

/// Sum of |rho_IJ| over I < J where both target amplitudes are nonzero.
double offdiag_sum(const DensityMatrix& rho, const PureState& target);

// Biseparability criteria. A violation certifies genuine multipartite
// entanglement.

/// |rho_18| <= sqrt(rho_22 rho_77) + sqrt(rho_33 rho_66) + sqrt(rho_44 rho_55).
CriterionReport ghz3_biseparability(const DensityMatrix& rho);

/// |rho_{1,2^N}| <= 1/2 sum_{1<=|I|<=N-1} sqrt(rho_I rho_~I), any N >= 2.
CriterionReport ghzN_biseparability(const DensityMatrix& rho);
CriterionReport ghzN_biseparability(const XState& rho);

/// |rho_23| + |rho_25| + |rho_35| <= sqrt(rho_11 rho_44) + sqrt(rho_11 rho_66)
///   + sqrt(rho_11 rho_77) + (rho_22 + rho_33 + rho_55)/2.
CriterionReport w3_biseparability(const DensityMatrix& rho);

/// Off-diagonal W4 sum <= sum_{|I|=2} sqrt(rho_0000 rho_I) + sum_{|I|=1} rho_I.
CriterionReport w4_biseparability(const DensityMatrix& rho);

/// Off-diagonal D4 sum <= sqrt(rho_0000 rho_1111) + sum_{|I|=1,|J|=3} sqrt(rho_I rho_J)
///   + 3/2 sum_{|I|=2} rho_I.
CriterionReport dicke4_biseparability(const DensityMatrix& rho);

// Full-separability criteria. A violation certifies the state is not fully
// separable.

/// |rho_18| <= (rho_22 rho_33 rho_44 rho_55 rho_66 rho_77)^(1/6).
CriterionReport fullsep_base(const DensityMatrix& rho);

/// |rho_23| + |rho_25| + |rho_35| <= sqrt(rho_11 rho_44) + sqrt(rho_11 rho_66) + sqrt(rho_11 rho_77).
CriterionReport fullsep_w3(const DensityMatrix& rho);

/// W3 criterion in fidelity form: F <= 2/3 (sqrt(d1 d4) + sqrt(d1 d6) +
/// sqrt(d1 d7) + d2 + d3 + d5), with d the 1-based diagonal. Throws on F
/// outside [0, 1], negative diagonals or diagonals not summing to 1 (1e-6).
CriterionReport w3_fidelity_form(double fidelity_w3, std::span<const double, 8> diagonals);

}  // namespace sepcrit

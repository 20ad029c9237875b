#pragma once

#include <limits>
#include <vector>

#include "sepcrit/criteria.hpp"

namespace sepcrit {

/// Decay rate gamma and elapsed time t; x = exp(-gamma t) is the surviving
/// excited population.
struct RelaxationParams {
  double gamma = 1.0;
  double t = 0.0;

  /// Throws unless gamma > 0 and t >= 0.
  void validate() const;
  double x() const;
};

/// Zero-temperature relaxation on the listed qubits: |1><1| -> x|1><1| +
/// (1-x)|0><0|, coherences scaled by sqrt(x). Throws unless 0 <= x <= 1.
DensityMatrix relaxation_channel(const DensityMatrix& rho, double x, const std::vector<int>& qubits);
/// Same channel on every qubit.
DensityMatrix relaxation_channel(const DensityMatrix& rho, double x);

/// GHZ_N after relaxation of every qubit, in closed form. Throws unless
/// N >= 2 and 0 < x <= 1.
XState relaxed_ghz(int n_qubits, double x);

/// relaxed_ghz with each qubit filtered by decoherence_filter(x); for
/// 0 < x < 1.
XState filtered_relaxed_ghz(int n_qubits, double x);

struct SurvivalThreshold {
  double t = std::numeric_limits<double>::infinity();
  double x = 0.0;  ///< exp(-gamma t)
  bool unbounded = true;
};

/// t* = -ln[1 - (2^(N-1) - 1)^(-2/N)] / gamma. For N = 2 the state stays
/// GME for all finite times and the result is flagged unbounded.
SurvivalThreshold gme_survival_threshold(int n_qubits, double gamma);

/// ghzN criterion on the decoherence-filtered relaxed GHZ state at time t.
/// At t = 0 the unfiltered pure GHZ state is used.
CriterionReport decoherence_report(int n_qubits, double gamma, double t);

/// Bisection in t on decoherence_report over [0, t_max]. t_max <= 0 picks a
/// bracket that contains the analytic threshold. Throws std::runtime_error
/// when the margin does not change sign on the bracket.
double gme_survival_numeric(int n_qubits, double gamma, double tol, double t_max = 0.0);

}  // namespace sepcrit

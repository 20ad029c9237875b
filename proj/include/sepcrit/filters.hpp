#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sepcrit/criteria.hpp"

namespace sepcrit {

/// Smallest |det F_q| accepted for a local filter.
inline constexpr double kFilterDeterminantFloor = 1e-6;

/// One invertible 2x2 operator per qubit.
class LocalFilterSet {
 public:
  /// Throws std::invalid_argument if any |det F_q| is below the floor.
  explicit LocalFilterSet(std::vector<Matrix2> filters);

  static LocalFilterSet identity(int n_qubits);
  /// Reads 8 reals per qubit as (Re, Im) of F00, F01, F10, F11 and rescales
  /// each operator to |det| = 1. Throws if a raw determinant is below the floor.
  static LocalFilterSet from_parameters(int n_qubits, const std::vector<double>& params);

  int n_qubits() const { return static_cast<int>(filters_.size()); }
  const std::vector<Matrix2>& filters() const { return filters_; }
  const Matrix2& operator[](int q) const { return filters_.at(static_cast<std::size_t>(q)); }

  /// The filtered state rescaled to unit trace.
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  std::vector<Matrix2> filters_;
};

/// alpha|0><0| + (1/alpha)|1><1| with alpha^4 = x/(1-x) on each of n qubits.
/// Throws unless 0 < x < 1.
LocalFilterSet decoherence_filter(int n_qubits, double x);

/// alpha from decoherence_filter, exposed for tests.
double decoherence_filter_alpha(double x);

struct NelderMeadOptions {
  int max_evaluations = 1000;
  double initial_step = 0.5;
  double tolerance = 1e-12;  ///< stop when the simplex spread falls below
};

struct NelderMeadResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  int evaluations = 0;
};

/// Maximizes f with the Nelder-Mead simplex method. The result is the best
/// point seen over all evaluations, the start point included, so the best
/// value never decreases when max_evaluations grows.
NelderMeadResult nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> start, const NelderMeadOptions& options);

struct FilterOptimizationResult {
  LocalFilterSet filters;
  CriterionReport report;      ///< evaluated on the normalized filtered state
  CriterionReport unfiltered;  ///< evaluated on the normalized input
  int best_restart = 0;
  int evaluations = 0;

  bool violated() const { return report.violated; }
  /// "violated" or "undetected (heuristic)".
  std::string status() const;
};

/// Searches local filters maximizing the margin of `criterion_id` on the
/// normalized filtered state. Restart 0 starts at the identity; each of the
/// `restarts` further starts is a random filter drawn from `seed`. Each
/// restart may spend up to `budget` evaluations. Ties between restarts go to
/// the lower index, so the result depends only on the arguments.
FilterOptimizationResult optimize_violation(const DensityMatrix& rho, const std::string& criterion_id, int restarts,
                                            int budget, std::uint64_t seed);

}  // namespace sepcrit

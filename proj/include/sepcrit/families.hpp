#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sepcrit/density_matrix.hpp"

namespace sepcrit {

/// (|0...0> + |1...1>)/sqrt(2).
PureState ghz(int n_qubits);

/// Equal superposition of all weight-1 basis states.
PureState w(int n_qubits);

/// Equal superposition of all weight-k basis states, normalized.
PureState dicke(int n_qubits, int k);

/// (1-p)|psi><psi| + p * 1/2^N for the normalized psi.
DensityMatrix white_noise_mix(const PureState& psi, double p);

/// Noisy GHZ state in closed form, usable beyond dense sizes.
XState ghz_white_noise(int n_qubits, double p);

/// Three-qubit GHZ-diagonal parameters. Pair i (1-based) couples basis
/// indices i-1 and 8-i; lambda[i] is the diagonal weight on both of them and
/// mu[i] the real anti-diagonal entry.
struct GhzDiagonal3 {
  std::array<double, 4> lambda{};
  std::array<double, 4> mu{};
  /// Divides every entry. Empty means the matrix is kept unnormalized.
  std::optional<double> normalization;

  /// Throws std::invalid_argument unless all lambda >= 0 and |mu_i| <= lambda_i.
  void validate() const;
  /// Divisor actually applied, 1 when unnormalized.
  double scale() const { return normalization.value_or(1.0); }
  /// 2 * sum(lambda) / scale.
  double trace() const;
};

/// Basis index of the first-digit-0 member of three-qubit pair i (1-based).
inline BasisIndex ghz3_pair_index(int pair) { return static_cast<BasisIndex>(pair - 1); }

DensityMatrix ghz_diagonal_3(const GhzDiagonal3& params);

/// Parameters of the bound entangled family: lambda_1 = lambda_8 = mu_1 = 1,
/// lambda_7 = 1/lambda_2, lambda_6 = 1/lambda_3, lambda_5 = 1/lambda_4.
struct AcinFamilyParams {
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double lambda4 = 1.0;

  /// True when lambda2 * lambda3 differs from lambda4 by more than `rel_tol`
  /// (relative). These members are not fully separable.
  bool bound_entangled_candidate(double rel_tol = 1e-9) const;
};

/// Unnormalized 8x8 member of the family.
DensityMatrix acin_state(const AcinFamilyParams& params);

/// The 2^N GHZ-basis states (|x> + |~x>)/sqrt(2), (|x> - |~x>)/sqrt(2) for
/// x = 0 .. 2^(N-1)-1 in that order; the first element is ghz(N).
std::vector<PureState> ghz_basis(int n_qubits);

/// GHZ-diagonal state on N qubits: lambda and mu indexed by I with first
/// digit 0. Returned in X-state form; lambda_I is placed on I and ~I.
XState ghz_diagonal_n(int n_qubits, const std::vector<double>& lambda, const std::vector<double>& mu);

}  // namespace sepcrit

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sepcrit/index_tuple.hpp"

namespace sepcrit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Dense storage is capped here; structured families go further via XState.
inline constexpr int kMaxDenseQubits = 12;

/// Hermiticity, diagonal and PSD checks use this tolerance times the trace.
inline constexpr double kValidationTolerance = 1e-9;

/// A pure state on N qubits. Amplitudes need not be normalized.
class PureState {
 public:
  PureState(int n_qubits, Vector amplitudes);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex amplitude(BasisIndex i) const { return amps_(static_cast<Eigen::Index>(i)); }
  double norm() const { return amps_.norm(); }
  PureState normalized() const;

 private:
  int n_;
  Vector amps_;
};

/// Result of the optional positivity check.
struct PsdCheck {
  double min_eigenvalue = 0.0;
  bool ok = true;
};

/// A 2^N x 2^N Hermitian matrix with positive trace. Normalization is not
/// required: every criterion in this library is scale invariant.
class DensityMatrix {
 public:
  /// Validates Hermiticity and the diagonal to kValidationTolerance * trace,
  /// then stores the Hermitian part. Throws std::invalid_argument on failure.
  explicit DensityMatrix(Matrix entries);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

  Complex operator()(BasisIndex i, BasisIndex j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double diagonal(BasisIndex i) const { return (*this)(i, i).real(); }
  double diagonal(const IndexTuple& t) const;
  double trace() const { return trace_; }

  DensityMatrix normalized() const;
  DensityMatrix scaled(double factor) const;

  /// Smallest eigenvalue against -kValidationTolerance * trace. A failing
  /// check is a warning; the state can still be analyzed.
  PsdCheck psd_check() const;

 private:
  int n_;
  Matrix m_;
  double trace_;
};

/// Convenience accessor matching the diagonal_entry operation.
double diagonal_entry(const DensityMatrix& rho, const IndexTuple& t);

/// States supported on the diagonal and the anti-diagonal only. Used for the
/// GHZ-type families whose sweeps go beyond dense sizes.
class XState {
 public:
  /// `diagonal` has 2^N entries. `coherence[I]` is the entry at row I and
  /// column complement(I), for the 2^(N-1) indices I whose first digit is 0.
  XState(int n_qubits, std::vector<double> diagonal, std::vector<Complex> coherence);

  int n_qubits() const { return n_; }
  BasisIndex dim() const { return BasisIndex{1} << n_; }
  double diagonal(BasisIndex i) const { return diag_[i]; }
  Complex coherence(BasisIndex i) const;
  Complex entry(BasisIndex i, BasisIndex j) const;
  double trace() const;

  const std::vector<double>& diagonal_values() const { return diag_; }

  /// Conjugation by a product of diagonal single-qubit filters
  /// diag(f0_q, f1_q); one pair per qubit.
  XState filtered(std::span<const std::pair<Complex, Complex>> diagonal_filters) const;

  /// Dense copy, allowed up to kMaxDenseQubits.
  DensityMatrix to_dense() const;

 private:
  int n_;
  std::vector<double> diag_;
  std::vector<Complex> coh_;
};

/// Returns (F_1 x ... x F_N) rho (F_1 x ... x F_N)^dagger. The result is in
/// general unnormalized.
DensityMatrix apply_local(const DensityMatrix& rho, std::span<const Matrix2> ops);

/// Transposes the tensor factor on `p.side_a()`.
DensityMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& p);

/// <psi|rho|psi> for the normalized versions of both arguments.
double fidelity(const DensityMatrix& rho, const PureState& psi);

/// Builds the state a_A (x) b_B placed on the qubits of the two sides of `p`.
/// `side_a_amps` is indexed by the side-A bits in qubit order, likewise B.
PureState product_across(const Bipartition& p, const Vector& side_a_amps, const Vector& side_b_amps);

/// Schmidt coefficients (singular values, descending) of psi across `p`.
Eigen::VectorXd schmidt_coefficients(const PureState& psi, const Bipartition& p);

/// Gathers the bits of `index` selected by `mask` into a compact integer,
/// keeping their order.
BasisIndex extract_bits(BasisIndex index, BasisIndex mask);

/// Inverse of extract_bits: spreads `compact` over the set bits of `mask`.
BasisIndex deposit_bits(BasisIndex compact, BasisIndex mask);

}  // namespace sepcrit

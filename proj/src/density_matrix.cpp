#include "sepcrit/density_matrix.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace sepcrit {

namespace {

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw std::invalid_argument("dimension is not a power of two: " + std::to_string(dim));
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

}  // namespace

BasisIndex extract_bits(BasisIndex index, BasisIndex mask) {
  BasisIndex out = 0;
  for (int b = 63; b >= 0; --b) {
    const BasisIndex bit = BasisIndex{1} << b;
    if (mask & bit) {
      out = (out << 1) | ((index & bit) ? 1U : 0U);
    }
  }
  return out;
}

BasisIndex deposit_bits(BasisIndex compact, BasisIndex mask) {
  BasisIndex out = 0;
  for (int b = 0; b < 64; ++b) {
    const BasisIndex bit = BasisIndex{1} << b;
    if (mask & bit) {
      if (compact & 1U) {
        out |= bit;
      }
      compact >>= 1;
    }
  }
  return out;
}

PureState::PureState(int n_qubits, Vector amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("pure state qubit count out of range");
  }
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw std::invalid_argument("pure state amplitude count must be 2^n");
  }
  if (!(amps_.squaredNorm() > 0.0) || !std::isfinite(amps_.squaredNorm())) {
    throw std::invalid_argument("pure state must have positive finite norm");
  }
}

PureState PureState::normalized() const { return PureState(n_, amps_ / amps_.norm()); }

DensityMatrix::DensityMatrix(Matrix entries) {
  if (entries.rows() != entries.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  n_ = qubits_for_dim(entries.rows());
  if (n_ > kMaxDenseQubits) {
    throw std::invalid_argument("dense density matrices are limited to " +
                                std::to_string(kMaxDenseQubits) + " qubits");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  const double tr = entries.diagonal().real().sum();
  if (!(tr > 0.0)) {
    throw std::invalid_argument("density matrix trace must be positive");
  }
  const double tol = kValidationTolerance * tr;
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (entries.diagonal().real().minCoeff() < -tol) {
    throw std::invalid_argument("density matrix has a negative diagonal entry");
  }
  m_ = (entries + entries.adjoint()) * 0.5;
  trace_ = m_.diagonal().real().sum();
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::diagonal(const IndexTuple& t) const {
  if (t.n_qubits() != n_) {
    throw std::invalid_argument("index tuple length does not match qubit count");
  }
  return diagonal(t.index());
}

DensityMatrix DensityMatrix::normalized() const { return DensityMatrix(m_ / trace_); }

DensityMatrix DensityMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw std::invalid_argument("scale factor must be positive");
  }
  return DensityMatrix(m_ * factor);
}

PsdCheck DensityMatrix::psd_check() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  PsdCheck out;
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  out.ok = out.min_eigenvalue >= -kValidationTolerance * trace_;
  return out;
}

double diagonal_entry(const DensityMatrix& rho, const IndexTuple& t) { return rho.diagonal(t); }

XState::XState(int n_qubits, std::vector<double> diagonal, std::vector<Complex> coherence)
    : n_(n_qubits), diag_(std::move(diagonal)), coh_(std::move(coherence)) {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("X-state qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (diag_.size() != dim || coh_.size() != dim / 2) {
    throw std::invalid_argument("X-state storage sizes do not match qubit count");
  }
  const double tr = trace();
  if (!(tr > 0.0)) {
    throw std::invalid_argument("X-state trace must be positive");
  }
  const double tol = kValidationTolerance * tr;
  const BasisIndex full = full_mask(n_qubits);
  for (std::size_t i = 0; i < dim / 2; ++i) {
    const double a = diag_[i];
    const double b = diag_[i ^ full];
    if (a < -tol || b < -tol) {
      throw std::invalid_argument("X-state has a negative diagonal entry");
    }
    if (std::abs(coh_[i]) > std::sqrt(std::max(a, 0.0) * std::max(b, 0.0)) + tol) {
      throw std::invalid_argument("X-state coherence exceeds its 2x2 positivity bound");
    }
  }
}

Complex XState::coherence(BasisIndex i) const {
  const BasisIndex full = full_mask(n_);
  const BasisIndex half = dim() / 2;
  return i < half ? coh_[i] : std::conj(coh_[i ^ full]);
}

Complex XState::entry(BasisIndex i, BasisIndex j) const {
  if (i == j) {
    return diag_[i];
  }
  if ((i ^ j) == full_mask(n_)) {
    return coherence(i);
  }
  return 0.0;
}

double XState::trace() const {
  double t = 0.0;
  for (double d : diag_) {
    t += d;
  }
  return t;
}

XState XState::filtered(std::span<const std::pair<Complex, Complex>> diagonal_filters) const {
  if (static_cast<int>(diagonal_filters.size()) != n_) {
    throw std::invalid_argument("need one diagonal filter per qubit");
  }
  auto factor = [&](BasisIndex i) {
    Complex f = 1.0;
    for (int q = 0; q < n_; ++q) {
      const auto& [f0, f1] = diagonal_filters[static_cast<std::size_t>(q)];
      f *= (i & qubit_bit(n_, q)) ? f1 : f0;
    }
    return f;
  };
  const BasisIndex full = full_mask(n_);
  std::vector<double> diag(diag_.size());
  std::vector<Complex> coh(coh_.size());
  for (BasisIndex i = 0; i < dim(); ++i) {
    diag[i] = diag_[i] * std::norm(factor(i));
  }
  for (BasisIndex i = 0; i < dim() / 2; ++i) {
    coh[i] = factor(i) * coh_[i] * std::conj(factor(i ^ full));
  }
  return XState(n_, std::move(diag), std::move(coh));
}

DensityMatrix XState::to_dense() const {
  if (n_ > kMaxDenseQubits) {
    throw std::invalid_argument("X-state too large for dense storage");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(dim());
  const BasisIndex full = full_mask(n_);
  Matrix m = Matrix::Zero(d, d);
  for (BasisIndex i = 0; i < dim(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag_[i];
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ full)) = coherence(i);
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix apply_local(const DensityMatrix& rho, std::span<const Matrix2> ops) {
  const int n = rho.n_qubits();
  if (static_cast<int>(ops.size()) != n) {
    throw std::invalid_argument("apply_local needs one operator per qubit");
  }
  Matrix m = rho.matrix();
  const Eigen::Index dim = m.rows();
  for (int q = 0; q < n; ++q) {
    const Matrix2& f = ops[static_cast<std::size_t>(q)];
    const Eigen::Index bit = static_cast<Eigen::Index>(qubit_bit(n, q));
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & bit) {
        continue;
      }
      const Eigen::Index j = i | bit;
      // rows: F acting from the left
      for (Eigen::Index c = 0; c < dim; ++c) {
        const Complex a = m(i, c);
        const Complex b = m(j, c);
        m(i, c) = f(0, 0) * a + f(0, 1) * b;
        m(j, c) = f(1, 0) * a + f(1, 1) * b;
      }
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & bit) {
        continue;
      }
      const Eigen::Index j = i | bit;
      // columns: F^dagger acting from the right
      for (Eigen::Index r = 0; r < dim; ++r) {
        const Complex a = m(r, i);
        const Complex b = m(r, j);
        m(r, i) = a * std::conj(f(0, 0)) + b * std::conj(f(0, 1));
        m(r, j) = a * std::conj(f(1, 0)) + b * std::conj(f(1, 1));
      }
    }
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& p) {
  if (p.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("bipartition size does not match state");
  }
  const BasisIndex a = p.side_a();
  const BasisIndex dim = rho.dim();
  Matrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (BasisIndex i = 0; i < dim; ++i) {
    for (BasisIndex j = 0; j < dim; ++j) {
      const BasisIndex si = (i & ~a) | (j & a);
      const BasisIndex sj = (j & ~a) | (i & a);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rho(si, sj);
    }
  }
  return DensityMatrix(std::move(out));
}

double fidelity(const DensityMatrix& rho, const PureState& psi) {
  if (psi.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("fidelity dimension mismatch");
  }
  const Vector& a = psi.amplitudes();
  const Complex v = a.dot(rho.matrix() * a);
  return v.real() / (rho.trace() * a.squaredNorm());
}

PureState product_across(const Bipartition& p, const Vector& side_a_amps, const Vector& side_b_amps) {
  const int n = p.n_qubits();
  if (side_a_amps.size() != (Eigen::Index{1} << p.size_a()) ||
      side_b_amps.size() != (Eigen::Index{1} << (n - p.size_a()))) {
    throw std::invalid_argument("side amplitudes do not match bipartition sizes");
  }
  const BasisIndex dim = BasisIndex{1} << n;
  Vector v(static_cast<Eigen::Index>(dim));
  for (BasisIndex x = 0; x < dim; ++x) {
    v(static_cast<Eigen::Index>(x)) =
        side_a_amps(static_cast<Eigen::Index>(extract_bits(x, p.side_a()))) *
        side_b_amps(static_cast<Eigen::Index>(extract_bits(x, p.side_b())));
  }
  return PureState(n, std::move(v));
}

Eigen::VectorXd schmidt_coefficients(const PureState& psi, const Bipartition& p) {
  if (psi.n_qubits() != p.n_qubits()) {
    throw std::invalid_argument("bipartition size does not match state");
  }
  const Eigen::Index rows = Eigen::Index{1} << p.size_a();
  const Eigen::Index cols = Eigen::Index{1} << (p.n_qubits() - p.size_a());
  Matrix m(rows, cols);
  for (BasisIndex x = 0; x < psi.dim(); ++x) {
    m(static_cast<Eigen::Index>(extract_bits(x, p.side_a())),
      static_cast<Eigen::Index>(extract_bits(x, p.side_b()))) = psi.amplitude(x);
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

}  // namespace sepcrit

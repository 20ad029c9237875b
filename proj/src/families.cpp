#include "sepcrit/families.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sepcrit {

namespace {

void require_at_least_two(int n_qubits) {
  if (n_qubits < 2 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("state family needs 2 <= N <= " + std::to_string(kMaxDenseQubits));
  }
}

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

}  // namespace

PureState ghz(int n_qubits) {
  require_at_least_two(n_qubits);
  Vector v = Vector::Zero(dim_of(n_qubits));
  v(0) = v(dim_of(n_qubits) - 1) = 1.0 / std::sqrt(2.0);
  return PureState(n_qubits, std::move(v));
}

PureState w(int n_qubits) {
  require_at_least_two(n_qubits);
  return dicke(n_qubits, 1);
}

PureState dicke(int n_qubits, int k) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("dicke qubit count out of range");
  }
  if (k < 0 || k > n_qubits) {
    throw std::invalid_argument("dicke excitation number out of range");
  }
  const auto support = indices_of_weight(n_qubits, k);
  Vector v = Vector::Zero(dim_of(n_qubits));
  const double a = 1.0 / std::sqrt(static_cast<double>(support.size()));
  for (BasisIndex i : support) {
    v(static_cast<Eigen::Index>(i)) = a;
  }
  return PureState(n_qubits, std::move(v));
}

DensityMatrix white_noise_mix(const PureState& psi, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("white noise fraction must lie in [0, 1]");
  }
  const Vector a = psi.normalized().amplitudes();
  const Eigen::Index d = a.size();
  Matrix m = (1.0 - p) * (a * a.adjoint());
  m.diagonal().array() += p / static_cast<double>(d);
  return DensityMatrix(std::move(m));
}

XState ghz_white_noise(int n_qubits, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("white noise fraction must lie in [0, 1]");
  }
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const double noise = p / static_cast<double>(dim);
  std::vector<double> diag(dim, noise);
  diag.front() += (1.0 - p) / 2.0;
  diag.back() += (1.0 - p) / 2.0;
  std::vector<Complex> coh(dim / 2, 0.0);
  coh[0] = (1.0 - p) / 2.0;
  return XState(n_qubits, std::move(diag), std::move(coh));
}

void GhzDiagonal3::validate() const {
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(lambda[i]) || !std::isfinite(mu[i]) || lambda[i] < 0.0) {
      throw std::invalid_argument("GHZ-diagonal lambda must be finite and nonnegative");
    }
    if (std::abs(mu[i]) > lambda[i] * (1.0 + 1e-12)) {
      throw std::invalid_argument("GHZ-diagonal state needs |mu_i| <= lambda_i (pair " +
                                  std::to_string(i + 1) + ")");
    }
  }
  if (normalization && !(*normalization > 0.0)) {
    throw std::invalid_argument("GHZ-diagonal normalization must be positive");
  }
  if (!(lambda[0] + lambda[1] + lambda[2] + lambda[3] > 0.0)) {
    throw std::invalid_argument("GHZ-diagonal state has zero trace");
  }
}

double GhzDiagonal3::trace() const {
  return 2.0 * (lambda[0] + lambda[1] + lambda[2] + lambda[3]) / scale();
}

DensityMatrix ghz_diagonal_3(const GhzDiagonal3& params) {
  params.validate();
  const double s = params.scale();
  Matrix m = Matrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i) {
    const Eigen::Index lo = i;
    const Eigen::Index hi = 7 - i;
    m(lo, lo) = m(hi, hi) = params.lambda[i] / s;
    m(lo, hi) = m(hi, lo) = params.mu[i] / s;
  }
  return DensityMatrix(std::move(m));
}

bool AcinFamilyParams::bound_entangled_candidate(double rel_tol) const {
  const double prod = lambda2 * lambda3;
  return std::abs(prod - lambda4) > rel_tol * std::max(prod, lambda4);
}

DensityMatrix acin_state(const AcinFamilyParams& params) {
  if (!(params.lambda2 > 0.0 && params.lambda3 > 0.0 && params.lambda4 > 0.0)) {
    throw std::invalid_argument("Acin family parameters must be positive");
  }
  const std::array<double, 8> diag = {1.0,
                                      params.lambda2,
                                      params.lambda3,
                                      params.lambda4,
                                      1.0 / params.lambda4,
                                      1.0 / params.lambda3,
                                      1.0 / params.lambda2,
                                      1.0};
  Matrix m = Matrix::Zero(8, 8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    m(i, i) = diag[static_cast<std::size_t>(i)];
  }
  m(0, 7) = m(7, 0) = 1.0;
  return DensityMatrix(std::move(m));
}

std::vector<PureState> ghz_basis(int n_qubits) {
  require_at_least_two(n_qubits);
  const Eigen::Index dim = dim_of(n_qubits);
  const BasisIndex full = full_mask(n_qubits);
  const double a = 1.0 / std::sqrt(2.0);
  std::vector<PureState> out;
  out.reserve(static_cast<std::size_t>(dim));
  for (BasisIndex x = 0; x < static_cast<BasisIndex>(dim / 2); ++x) {
    for (double sign : {1.0, -1.0}) {
      Vector v = Vector::Zero(dim);
      v(static_cast<Eigen::Index>(x)) = a;
      v(static_cast<Eigen::Index>(x ^ full)) = sign * a;
      out.emplace_back(n_qubits, std::move(v));
    }
  }
  return out;
}

XState ghz_diagonal_n(int n_qubits, const std::vector<double>& lambda, const std::vector<double>& mu) {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  const std::size_t half = std::size_t{1} << (n_qubits - 1);
  if (lambda.size() != half || mu.size() != half) {
    throw std::invalid_argument("GHZ-diagonal parameters need 2^(N-1) entries each");
  }
  const BasisIndex full = full_mask(n_qubits);
  std::vector<double> diag(2 * half);
  std::vector<Complex> coh(half);
  for (std::size_t i = 0; i < half; ++i) {
    if (lambda[i] < 0.0 || std::abs(mu[i]) > lambda[i] * (1.0 + 1e-12)) {
      throw std::invalid_argument("GHZ-diagonal state needs 0 <= |mu_I| <= lambda_I");
    }
    diag[i] = diag[i ^ full] = lambda[i];
    coh[i] = mu[i];
  }
  return XState(n_qubits, std::move(diag), std::move(coh));
}

}  // namespace sepcrit

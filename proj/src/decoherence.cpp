#include "sepcrit/decoherence.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "sepcrit/filters.hpp"

namespace sepcrit {

void RelaxationParams::validate() const {
  if (!(gamma > 0.0) || !(t >= 0.0)) {
    throw std::invalid_argument("relaxation needs gamma > 0 and t >= 0");
  }
}

double RelaxationParams::x() const {
  validate();
  return std::exp(-gamma * t);
}

DensityMatrix relaxation_channel(const DensityMatrix& rho, double x, const std::vector<int>& qubits) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("relaxation channel needs 0 <= x <= 1");
  }
  const int n = rho.n_qubits();
  Matrix m = rho.matrix();
  const Eigen::Index dim = m.rows();
  const double sx = std::sqrt(x);
  for (int q : qubits) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument("relaxation channel qubit out of range");
    }
    const auto bit = static_cast<Eigen::Index>(qubit_bit(n, q));
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const bool ei = i & bit;
        const bool ej = j & bit;
        if (ei && ej) {
          out(i, j) += x * m(i, j);
          out(i & ~bit, j & ~bit) += (1.0 - x) * m(i, j);
        } else if (ei || ej) {
          out(i, j) += sx * m(i, j);
        } else {
          out(i, j) += m(i, j);
        }
      }
    }
    m = std::move(out);
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix relaxation_channel(const DensityMatrix& rho, double x) {
  std::vector<int> all(static_cast<std::size_t>(rho.n_qubits()));
  for (int q = 0; q < rho.n_qubits(); ++q) all[static_cast<std::size_t>(q)] = q;
  return relaxation_channel(rho, x, all);
}

XState relaxed_ghz(int n_qubits, double x) {
  if (n_qubits < 2 || n_qubits > static_cast<int>(kMaxQubits)) {
    throw std::invalid_argument("relaxed_ghz needs 2 <= N <= " + std::to_string(kMaxQubits));
  }
  if (!(x > 0.0 && x <= 1.0)) {
    throw std::invalid_argument("relaxed_ghz needs 0 < x <= 1");
  }
  const BasisIndex dim = BasisIndex{1} << n_qubits;
  std::vector<double> diag(dim);
  for (BasisIndex i = 0; i < dim; ++i) {
    const int k = std::popcount(i);
    diag[i] = 0.5 * ((k == 0 ? 1.0 : 0.0) + std::pow(x, k) * std::pow(1.0 - x, n_qubits - k));
  }
  std::vector<Complex> coh(dim / 2, Complex(0.0, 0.0));
  coh[0] = 0.5 * std::pow(x, 0.5 * n_qubits);
  return XState(n_qubits, std::move(diag), std::move(coh));
}

XState filtered_relaxed_ghz(int n_qubits, double x) {
  const double alpha = decoherence_filter_alpha(x);
  const std::vector<std::pair<Complex, Complex>> f(static_cast<std::size_t>(n_qubits),
                                                   {Complex(alpha, 0.0), Complex(1.0 / alpha, 0.0)});
  return relaxed_ghz(n_qubits, x).filtered(f);
}

SurvivalThreshold gme_survival_threshold(int n_qubits, double gamma) {
  if (n_qubits < 2) {
    throw std::invalid_argument("survival threshold needs N >= 2");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("survival threshold needs gamma > 0");
  }
  const double base = std::ldexp(1.0, n_qubits - 1) - 1.0;
  const double s = 1.0 - std::pow(base, -2.0 / n_qubits);
  SurvivalThreshold out;
  if (s <= 0.0) {
    return out;
  }
  out.t = -std::log(s) / gamma;
  out.x = s;
  out.unbounded = false;
  return out;
}

CriterionReport decoherence_report(int n_qubits, double gamma, double t) {
  const double x = RelaxationParams{gamma, t}.x();
  if (x >= 1.0) {
    return ghzN_biseparability(relaxed_ghz(n_qubits, 1.0));
  }
  if (!(x > 0.0)) {
    throw std::invalid_argument("relaxation has reached x = 0");
  }
  return ghzN_biseparability(filtered_relaxed_ghz(n_qubits, x));
}

double gme_survival_numeric(int n_qubits, double gamma, double tol, double t_max) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("bisection tolerance must be positive");
  }
  if (t_max <= 0.0) {
    const auto analytic = gme_survival_threshold(n_qubits, gamma);
    // Without a finite threshold any bracket works; the sign check reports it.
    t_max = analytic.unbounded ? 10.0 / gamma : 2.0 * analytic.t;
  }
  double lo = 0.0;
  double hi = t_max;
  const double m_lo = decoherence_report(n_qubits, gamma, lo).margin;
  const double m_hi = decoherence_report(n_qubits, gamma, hi).margin;
  if (!(m_lo > 0.0 && m_hi <= 0.0)) {
    throw std::runtime_error("decoherence margin does not change sign on [0, " + std::to_string(t_max) + "]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (decoherence_report(n_qubits, gamma, mid).margin > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sepcrit

#include "sepcrit/criteria.hpp"

#include <cmath>
#include <stdexcept>

namespace sepcrit {

namespace {

void require_qubits(const DensityMatrix& rho, int n, const char* what) {
  if (rho.n_qubits() != n) {
    throw std::invalid_argument(std::string(what) + " needs a " + std::to_string(n) +
                                "-qubit state, got " + std::to_string(rho.n_qubits()));
  }
}

// Tiny negative diagonals are allowed by validation; clamp before the root.
double sqrt_product(double a, double b) { return std::sqrt(std::max(a, 0.0) * std::max(b, 0.0)); }

template <typename State>
CriterionReport ghzN_impl(const State& rho) {
  const int n = rho.n_qubits();
  if (n < 2) {
    throw std::invalid_argument("ghzN criterion needs at least two qubits");
  }
  const BasisIndex full = full_mask(n);
  const double lhs = std::abs(rho.entry(0, full));
  // Pairs {I, ~I} with 1 <= |I| <= N-1, each counted once: I has first digit 0.
  double rhs = 0.0;
  const BasisIndex half = BasisIndex{1} << (n - 1);
  for (BasisIndex i = 1; i < half; ++i) {
    rhs += sqrt_product(rho.diagonal(i), rho.diagonal(i ^ full));
  }
  return make_report("ghzN", lhs, rhs, rho.trace());
}

struct DenseView {
  const DensityMatrix& rho;
  int n_qubits() const { return rho.n_qubits(); }
  double diagonal(BasisIndex i) const { return rho.diagonal(i); }
  Complex entry(BasisIndex i, BasisIndex j) const { return rho(i, j); }
  double trace() const { return rho.trace(); }
};

}  // namespace

CriterionReport make_report(std::string id, double lhs, double rhs, double trace) {
  CriterionReport r;
  r.criterion_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tolerance = kViolationTolerance * trace;
  r.violated = r.margin > r.tolerance;
  return r;
}

double offdiag_sum(const DensityMatrix& rho, const PureState& target) {
  if (target.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("target and state dimensions differ");
  }
  const double cutoff = 1e-14 * target.amplitudes().cwiseAbs().maxCoeff();
  std::vector<BasisIndex> support;
  for (BasisIndex i = 0; i < target.dim(); ++i) {
    if (std::abs(target.amplitude(i)) > cutoff) {
      support.push_back(i);
    }
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      sum += std::abs(rho(support[a], support[b]));
    }
  }
  return sum;
}

CriterionReport ghz3_biseparability(const DensityMatrix& rho) {
  require_qubits(rho, 3, "ghz3");
  const double lhs = std::abs(rho(0, 7));
  const double rhs = sqrt_product(rho.diagonal(1), rho.diagonal(6)) +
                     sqrt_product(rho.diagonal(2), rho.diagonal(5)) +
                     sqrt_product(rho.diagonal(3), rho.diagonal(4));
  return make_report("ghz3", lhs, rhs, rho.trace());
}

CriterionReport ghzN_biseparability(const DensityMatrix& rho) { return ghzN_impl(DenseView{rho}); }

CriterionReport ghzN_biseparability(const XState& rho) { return ghzN_impl(rho); }

CriterionReport w3_biseparability(const DensityMatrix& rho) {
  require_qubits(rho, 3, "w3");
  const double lhs = std::abs(rho(1, 2)) + std::abs(rho(1, 4)) + std::abs(rho(2, 4));
  const double d0 = rho.diagonal(0);
  const double rhs = sqrt_product(d0, rho.diagonal(3)) + sqrt_product(d0, rho.diagonal(5)) +
                     sqrt_product(d0, rho.diagonal(6)) +
                     0.5 * (rho.diagonal(1) + rho.diagonal(2) + rho.diagonal(4));
  return make_report("w3", lhs, rhs, rho.trace());
}

CriterionReport w4_biseparability(const DensityMatrix& rho) {
  require_qubits(rho, 4, "w4");
  const auto ones = indices_of_weight(4, 1);
  const auto twos = indices_of_weight(4, 2);
  double lhs = 0.0;
  for (std::size_t a = 0; a < ones.size(); ++a) {
    for (std::size_t b = a + 1; b < ones.size(); ++b) {
      lhs += std::abs(rho(ones[a], ones[b]));
    }
  }
  double rhs = 0.0;
  for (BasisIndex i : twos) {
    rhs += sqrt_product(rho.diagonal(0), rho.diagonal(i));
  }
  for (BasisIndex i : ones) {
    rhs += rho.diagonal(i);
  }
  return make_report("w4", lhs, rhs, rho.trace());
}

CriterionReport dicke4_biseparability(const DensityMatrix& rho) {
  require_qubits(rho, 4, "dicke4");
  const auto ones = indices_of_weight(4, 1);
  const auto twos = indices_of_weight(4, 2);
  const auto threes = indices_of_weight(4, 3);
  double lhs = 0.0;
  for (std::size_t a = 0; a < twos.size(); ++a) {
    for (std::size_t b = a + 1; b < twos.size(); ++b) {
      lhs += std::abs(rho(twos[a], twos[b]));
    }
  }
  double rhs = sqrt_product(rho.diagonal(0), rho.diagonal(15));
  for (BasisIndex i : ones) {
    for (BasisIndex j : threes) {
      rhs += sqrt_product(rho.diagonal(i), rho.diagonal(j));
    }
  }
  double middle = 0.0;
  for (BasisIndex i : twos) {
    middle += rho.diagonal(i);
  }
  rhs += 1.5 * middle;
  return make_report("dicke4", lhs, rhs, rho.trace());
}

CriterionReport fullsep_base(const DensityMatrix& rho) {
  require_qubits(rho, 3, "fullsep-base");
  const double lhs = std::abs(rho(0, 7));
  double prod = 1.0;
  for (BasisIndex i = 1; i <= 6; ++i) {
    prod *= std::max(rho.diagonal(i), 0.0);
  }
  return make_report("fullsep-base", lhs, std::pow(prod, 1.0 / 6.0), rho.trace());
}

CriterionReport fullsep_w3(const DensityMatrix& rho) {
  require_qubits(rho, 3, "fullsep-w3");
  const double lhs = std::abs(rho(1, 2)) + std::abs(rho(1, 4)) + std::abs(rho(2, 4));
  const double d0 = rho.diagonal(0);
  const double rhs = sqrt_product(d0, rho.diagonal(3)) + sqrt_product(d0, rho.diagonal(5)) +
                     sqrt_product(d0, rho.diagonal(6));
  return make_report("fullsep-w3", lhs, rhs, rho.trace());
}

CriterionReport w3_fidelity_form(double fidelity_w3, std::span<const double, 8> d) {
  if (!(fidelity_w3 >= 0.0 && fidelity_w3 <= 1.0)) {
    throw std::invalid_argument("W3 fidelity must lie in [0, 1]");
  }
  double total = 0.0;
  for (double v : d) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("diagonal entries must be finite and nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::invalid_argument("diagonal entries must sum to 1");
  }
  const double rhs = (2.0 / 3.0) * (std::sqrt(d[0] * d[3]) + std::sqrt(d[0] * d[5]) +
                                    std::sqrt(d[0] * d[6]) + d[1] + d[2] + d[4]);
  return make_report("w3-fidelity", fidelity_w3, rhs, total);
}

}  // namespace sepcrit

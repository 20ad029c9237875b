#include "sepcrit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sepcrit/families.hpp"
#include "sepcrit/registry.hpp"

namespace sepcrit {

namespace {

Vector gaussian_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  return v.normalized();
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

PureState product_state(int n, std::mt19937_64& rng) {
  Vector v = gaussian_vector(2, rng);
  for (int q = 1; q < n; ++q) {
    v = kron(v, gaussian_vector(2, rng));
  }
  return PureState(n, std::move(v));
}

PureState biseparable_state(int n, const Bipartition& p, std::mt19937_64& rng) {
  const Vector a = gaussian_vector(Eigen::Index{1} << p.size_a(), rng);
  const Vector b = gaussian_vector(Eigen::Index{1} << (n - p.size_a()), rng);
  return product_across(p, a, b);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

template <typename Eval>
SoundnessReport run_harness(SoundnessReport report, long samples, std::uint64_t seed, const Eval& eval) {
  for (long i = 0; i < samples; ++i) {
    const std::uint64_t s = soundness_sample_seed(seed, i);
    const double m = eval(soundness_sample(report.n_qubits, s, report.product_states_only));
    if (m > report.max_margin || i == 0) {
      report.max_margin = m;
      report.worst_seed = s;
    }
  }
  report.samples = samples;
  report.passed = report.max_margin <= kSoundnessTolerance;
  std::ostringstream os;
  os << "soundness_sample(" << report.n_qubits << ", " << report.worst_seed << "ULL, "
     << (report.product_states_only ? "true" : "false") << ")";
  report.reproducer = os.str();
  return report;
}

}  // namespace

PureState random_pure_state(int n_qubits, std::mt19937_64& rng) {
  return PureState(n_qubits, gaussian_vector(Eigen::Index{1} << n_qubits, rng));
}

PureState random_pure_biseparable(int n_qubits, const Bipartition& p, std::uint64_t seed) {
  if (p.n_qubits() != n_qubits) {
    throw std::invalid_argument("bipartition size does not match the qubit count");
  }
  std::mt19937_64 rng(seed);
  return biseparable_state(n_qubits, p, rng);
}

PureState random_pure_product(int n_qubits, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("random product state size out of range");
  }
  std::mt19937_64 rng(seed);
  return product_state(n_qubits, rng);
}

MonomialCriterion random_balanced_monomial(int n_qubits, int pairs, std::uint64_t seed) {
  if (pairs < 1) {
    throw std::invalid_argument("a monomial needs at least one pair");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<BasisIndex> pick(0, full_mask(n_qubits));
  std::map<IndexTuple, int> weights;
  for (int k = 0; k < pairs; ++k) {
    const IndexTuple t(n_qubits, pick(rng));
    ++weights[t];
    ++weights[t.complement()];
  }
  return MonomialCriterion("random-monomial-" + std::to_string(seed), std::move(weights), pairs);
}

PptResult ppt_check(const DensityMatrix& rho, const Bipartition& p) {
  const DensityMatrix pt = partial_transpose(rho, p);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt.matrix(), Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  return {min_ev >= -kValidationTolerance * rho.trace(), min_ev};
}

StateFamily white_noise_family(const PureState& psi) {
  return [psi](double p) { return white_noise_mix(psi, p); };
}

double threshold_bisection(const std::function<double(double)>& margin, double lo, double hi, double tol) {
  if (!(tol > 0.0) || !(lo < hi)) {
    throw std::invalid_argument("bisection needs lo < hi and tol > 0");
  }
  double m_lo = margin(lo);
  const double m_hi = margin(hi);
  if (!(m_lo * m_hi < 0.0)) {
    throw std::invalid_argument("margin does not change sign on the bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double m = margin(mid);
    if ((m > 0.0) == (m_lo > 0.0)) {
      lo = mid;
      m_lo = m;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double threshold_bisection(const StateFamily& family, const std::string& criterion_id, double lo, double hi,
                           double tol) {
  const Criterion c = make_criterion(criterion_id);
  return threshold_bisection([&](double p) { return c.evaluate(family(p)).margin; }, lo, hi, tol);
}

SweepResult sweep_family(const std::string& family_id, const StateFamily& family, const std::string& criterion_id,
                         const std::vector<double>& grid, double lo, double hi, double tol) {
  const Criterion c = make_criterion(criterion_id);
  SweepResult out{family_id, grid, {}, 0.0, tol};
  for (double p : grid) {
    out.reports.push_back(c.evaluate(family(p)));
  }
  out.threshold = threshold_bisection(family, criterion_id, lo, hi, tol);
  return out;
}

std::uint64_t soundness_sample_seed(std::uint64_t seed, long index) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

DensityMatrix soundness_sample(int n_qubits, std::uint64_t sample_seed, bool product_only) {
  std::mt19937_64 rng(sample_seed);
  const auto parts = all_bipartitions(n_qubits);
  std::uniform_int_distribution<std::size_t> pick_part(0, parts.size() - 1);
  auto draw = [&] {
    return product_only ? product_state(n_qubits, rng) : biseparable_state(n_qubits, parts[pick_part(rng)], rng);
  };
  if (sample_seed % 2 == 0) {
    return DensityMatrix::from_pure(draw());
  }
  std::uniform_int_distribution<int> pick_count(2, 8);
  std::exponential_distribution<double> dirichlet(1.0);
  const int count = pick_count(rng);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (int c = 0; c < count; ++c) {
    const double w = dirichlet(rng);
    const Vector v = draw().amplitudes();
    m += w * (v * v.adjoint());
    total += w;
  }
  return DensityMatrix(m / total);
}

SoundnessReport soundness_sweep(const std::string& criterion_id, int n_qubits, long samples, std::uint64_t seed) {
  const Criterion c = make_criterion(criterion_id);
  if (!c.applies_to(n_qubits)) {
    throw std::invalid_argument("criterion '" + criterion_id + "' does not apply to " + std::to_string(n_qubits) +
                                " qubits");
  }
  SoundnessReport r;
  r.criterion_id = criterion_id;
  r.n_qubits = n_qubits;
  r.product_states_only = c.cls == CriterionClass::kFullSeparability;
  return run_harness(r, samples, seed, [&](const DensityMatrix& rho) { return c.evaluate(rho).margin; });
}

SoundnessReport soundness_sweep(const MonomialCriterion& m, long samples, std::uint64_t seed) {
  SoundnessReport r;
  r.criterion_id = m.name();
  r.n_qubits = m.n_qubits();
  r.product_states_only = true;
  return run_harness(r, samples, seed, [&](const DensityMatrix& rho) { return fullsep_monomial(rho, m).margin; });
}

}  // namespace sepcrit

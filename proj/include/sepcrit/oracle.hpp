#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sepcrit/criteria.hpp"
#include "sepcrit/monomial.hpp"

namespace sepcrit {

/// Haar-random pure state on n qubits (normalized complex Gaussian amplitudes).
PureState random_pure_state(int n_qubits, std::mt19937_64& rng);

/// Random pure state on side A tensored with one on side B.
PureState random_pure_biseparable(int n_qubits, const Bipartition& p, std::uint64_t seed);

/// Tensor product of n random single-qubit states.
PureState random_pure_product(int n_qubits, std::uint64_t seed);

/// Random balanced monomial built from `pairs` random index tuples, each
/// taken together with its complement, so every qubit sees each digit once
/// per pair.
MonomialCriterion random_balanced_monomial(int n_qubits, int pairs, std::uint64_t seed);

struct PptResult {
  bool ok = true;  ///< partial transpose has no eigenvalue below -1e-9 * trace
  double min_eigenvalue = 0.0;
};

PptResult ppt_check(const DensityMatrix& rho, const Bipartition& p);

using StateFamily = std::function<DensityMatrix(double)>;

/// p -> (1-p)|psi><psi| + p 1/2^N.
StateFamily white_noise_family(const PureState& psi);

/// Sign-change point of the criterion margin on [lo, hi] to within `tol`.
/// Throws std::invalid_argument if margin(lo) and margin(hi) share a sign.
double threshold_bisection(const StateFamily& family, const std::string& criterion_id, double lo, double hi,
                           double tol);
/// Same with an arbitrary margin function.
double threshold_bisection(const std::function<double(double)>& margin, double lo, double hi, double tol);

struct SweepResult {
  std::string family;
  std::vector<double> grid;
  std::vector<CriterionReport> reports;
  double threshold = 0.0;
  double tolerance = 0.0;
};

/// Evaluates the criterion on `grid` and bisects the threshold on [lo, hi].
SweepResult sweep_family(const std::string& family_id, const StateFamily& family, const std::string& criterion_id,
                         const std::vector<double>& grid, double lo, double hi, double tol);

struct SoundnessReport {
  std::string criterion_id;
  int n_qubits = 0;
  long samples = 0;
  double max_margin = -1.0;  ///< largest margin over unit-trace samples
  std::uint64_t worst_seed = 0;
  bool product_states_only = false;
  bool passed = true;  ///< max_margin <= 1e-12
  std::string reproducer;
};

/// Per-sample tolerance of the soundness harness (on unit-trace states).
inline constexpr double kSoundnessTolerance = 1e-12;

/// The unit-trace state drawn for one harness sample. Even sample seeds give
/// a pure state, odd ones a Dirichlet mixture of 2 to 8 pure states. With
/// `product_only` the pure states are fully product; otherwise each is
/// product across a random bipartition.
DensityMatrix soundness_sample(int n_qubits, std::uint64_t sample_seed, bool product_only);

/// Seed used for sample `index` of a sweep started from `seed`.
std::uint64_t soundness_sample_seed(std::uint64_t seed, long index);

/// Runs `samples` draws through the criterion. Biseparability criteria get
/// biseparable samples; full-separability criteria get product samples.
SoundnessReport soundness_sweep(const std::string& criterion_id, int n_qubits, long samples, std::uint64_t seed);

/// Same harness for a monomial criterion over product-state samples.
SoundnessReport soundness_sweep(const MonomialCriterion& m, long samples, std::uint64_t seed);

}  // namespace sepcrit

#include "sepcrit/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sepcrit/registry.hpp"

namespace sepcrit {

namespace {

constexpr int kParamsPerQubit = 8;

double penalty() { return -std::numeric_limits<double>::infinity(); }

}  // namespace

LocalFilterSet::LocalFilterSet(std::vector<Matrix2> filters) : filters_(std::move(filters)) {
  if (filters_.empty()) {
    throw std::invalid_argument("a filter set needs at least one qubit");
  }
  for (const auto& f : filters_) {
    if (!(std::abs(f.determinant()) >= kFilterDeterminantFloor)) {
      throw std::invalid_argument("local filter is not invertible");
    }
  }
}

LocalFilterSet LocalFilterSet::identity(int n_qubits) {
  return LocalFilterSet(std::vector<Matrix2>(static_cast<std::size_t>(n_qubits), Matrix2::Identity()));
}

LocalFilterSet LocalFilterSet::from_parameters(int n_qubits, const std::vector<double>& params) {
  if (params.size() != static_cast<std::size_t>(kParamsPerQubit * n_qubits)) {
    throw std::invalid_argument("filter parameters need 8 reals per qubit");
  }
  std::vector<Matrix2> out;
  for (int q = 0; q < n_qubits; ++q) {
    const double* p = params.data() + kParamsPerQubit * q;
    Matrix2 f;
    f << Complex(p[0], p[1]), Complex(p[2], p[3]), Complex(p[4], p[5]), Complex(p[6], p[7]);
    const double det = std::abs(f.determinant());
    if (!(det >= kFilterDeterminantFloor)) {
      throw std::invalid_argument("local filter is not invertible");
    }
    out.push_back(f / std::sqrt(det));
  }
  return LocalFilterSet(std::move(out));
}

DensityMatrix LocalFilterSet::apply(const DensityMatrix& rho) const {
  return apply_local(rho, filters_).normalized();
}

double decoherence_filter_alpha(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::invalid_argument("decoherence filter needs 0 < x < 1");
  }
  return std::pow(x / (1.0 - x), 0.25);
}

LocalFilterSet decoherence_filter(int n_qubits, double x) {
  const double alpha = decoherence_filter_alpha(x);
  Matrix2 f = Matrix2::Zero();
  f(0, 0) = alpha;
  f(1, 1) = 1.0 / alpha;
  return LocalFilterSet(std::vector<Matrix2>(static_cast<std::size_t>(n_qubits), f));
}

NelderMeadResult nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  NelderMeadResult best{start, penalty(), 0};
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    ++best.evaluations;
    if (v > best.best_value) {
      best.best_value = v;
      best.best_point = x;
    }
    return v;
  };
  auto exhausted = [&] { return best.evaluations >= options.max_evaluations; };

  std::vector<std::vector<double>> simplex{start};
  std::vector<double> values{eval(start)};
  for (std::size_t i = 0; i < dim && !exhausted(); ++i) {
    auto x = start;
    x[i] += options.initial_step;
    simplex.push_back(x);
    values.push_back(eval(x));
  }
  if (simplex.size() != dim + 1) {
    return best;
  }

  std::vector<std::size_t> order(dim + 1);
  while (!exhausted()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Descending by value, so order[0] is the best vertex.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const std::size_t hi = order[0];
    const std::size_t lo = order[dim];
    const std::size_t next_lo = order[dim - (dim > 0 ? 1 : 0)];
    if (std::isfinite(values[hi]) && std::isfinite(values[lo]) &&
        std::abs(values[hi] - values[lo]) <= options.tolerance * (1.0 + std::abs(values[hi]))) {
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == lo) continue;
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i] / static_cast<double>(dim);
    }
    auto along = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i) x[i] = centroid[i] + t * (simplex[lo][i] - centroid[i]);
      return x;
    };

    auto reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr > values[hi]) {
      if (exhausted()) break;
      auto expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe > fr) {
        simplex[lo] = std::move(expanded);
        values[lo] = fe;
      } else {
        simplex[lo] = std::move(reflected);
        values[lo] = fr;
      }
      continue;
    }
    if (fr > values[next_lo]) {
      simplex[lo] = std::move(reflected);
      values[lo] = fr;
      continue;
    }
    if (exhausted()) break;
    const bool outside = fr > values[lo];
    auto contracted = along(outside ? -0.5 : 0.5);
    const double fc = eval(contracted);
    if (fc > std::max(fr, values[lo]) || (!outside && fc > values[lo])) {
      simplex[lo] = std::move(contracted);
      values[lo] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t v = 0; v <= dim && !exhausted(); ++v) {
      if (v == hi) continue;
      for (std::size_t i = 0; i < dim; ++i) simplex[v][i] = simplex[hi][i] + 0.5 * (simplex[v][i] - simplex[hi][i]);
      values[v] = eval(simplex[v]);
    }
  }
  return best;
}

std::string FilterOptimizationResult::status() const { return violated() ? "violated" : "undetected (heuristic)"; }

FilterOptimizationResult optimize_violation(const DensityMatrix& rho, const std::string& criterion_id, int restarts,
                                            int budget, std::uint64_t seed) {
  const Criterion criterion = make_criterion(criterion_id);
  const int n = rho.n_qubits();
  if (!criterion.applies_to(n)) {
    throw std::invalid_argument("criterion '" + criterion_id + "' does not apply to " + std::to_string(n) +
                                " qubits");
  }
  if (restarts < 0 || budget < 1) {
    throw std::invalid_argument("restarts must be >= 0 and budget >= 1");
  }
  const DensityMatrix unit = rho.normalized();

  auto objective = [&](const std::vector<double>& params) {
    try {
      return criterion.evaluate(LocalFilterSet::from_parameters(n, params).apply(unit)).margin;
    } catch (const std::invalid_argument&) {
      // Singular filters and filters that annihilate the state.
      return penalty();
    }
  };

  std::vector<double> identity_params(static_cast<std::size_t>(kParamsPerQubit * n), 0.0);
  for (int q = 0; q < n; ++q) {
    identity_params[static_cast<std::size_t>(kParamsPerQubit * q)] = 1.0;
    identity_params[static_cast<std::size_t>(kParamsPerQubit * q + 6)] = 1.0;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  NelderMeadOptions options;
  options.max_evaluations = budget;

  const CriterionReport unfiltered = criterion.evaluate(unit);
  FilterOptimizationResult result{LocalFilterSet::identity(n), unfiltered, unfiltered, 0, 0};
  double best_value = penalty();
  std::vector<double> best_params = identity_params;
  for (int r = 0; r <= restarts; ++r) {
    std::vector<double> start = identity_params;
    if (r > 0) {
      for (double& v : start) v = gauss(rng);
    }
    const auto nm = nelder_mead_maximize(objective, start, options);
    result.evaluations += nm.evaluations;
    if (nm.best_value > best_value) {
      best_value = nm.best_value;
      best_params = nm.best_point;
      result.best_restart = r;
    }
  }
  if (std::isfinite(best_value)) {
    result.filters = LocalFilterSet::from_parameters(n, best_params);
    result.report = criterion.evaluate(result.filters.apply(unit));
  }
  return result;
}

}  // namespace sepcrit

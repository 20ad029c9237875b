#include "sepcrit/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sepcrit {

namespace {

constexpr int kN = 3;
constexpr BasisIndex kFull = 7;

int pair_of(BasisIndex x) {
  const BasisIndex rep = (x & 4) ? (x ^ kFull) : x;
  return static_cast<int>(rep) + 1;
}

BasisIndex rep_of(int pair) { return static_cast<BasisIndex>(pair - 1); }

// Residual weights below this (relative to the trace) are dropped from the
// certificate; they stay far inside the verification tolerance.
constexpr double kNegligible = 1e-15;

}  // namespace

BasisIndex LocalRelabeling::apply(BasisIndex old_index) const {
  BasisIndex out = 0;
  for (int j = 0; j < kN; ++j) {
    if (old_index & qubit_bit(kN, permutation[static_cast<std::size_t>(j)])) {
      out |= qubit_bit(kN, j);
    }
  }
  return out ^ flips;
}

BasisIndex LocalRelabeling::invert(BasisIndex new_index) const {
  const BasisIndex unflipped = new_index ^ flips;
  BasisIndex out = 0;
  for (int j = 0; j < kN; ++j) {
    if (unflipped & qubit_bit(kN, j)) {
      out |= qubit_bit(kN, permutation[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

Bipartition LocalRelabeling::to_original(const Bipartition& in_new_labels) const {
  std::vector<int> side;
  for (int j : in_new_labels.qubits_a()) {
    side.push_back(permutation[static_cast<std::size_t>(j)]);
  }
  return Bipartition::from_qubits(kN, side);
}

GhzDiagonal3 relabel(const GhzDiagonal3& s, const LocalRelabeling& r) {
  GhzDiagonal3 out = s;
  for (int pair = 1; pair <= 4; ++pair) {
    const int old_pair = pair_of(r.invert(rep_of(pair)));
    out.lambda[static_cast<std::size_t>(pair - 1)] = s.lambda[static_cast<std::size_t>(old_pair - 1)];
    out.mu[static_cast<std::size_t>(pair - 1)] = s.mu[static_cast<std::size_t>(old_pair - 1)];
  }
  return out;
}

GhzDiagonal3 unrelabel(const GhzDiagonal3& s, const LocalRelabeling& r) {
  GhzDiagonal3 out = s;
  for (int pair = 1; pair <= 4; ++pair) {
    const int new_pair = pair_of(r.apply(rep_of(pair)));
    out.lambda[static_cast<std::size_t>(pair - 1)] = s.lambda[static_cast<std::size_t>(new_pair - 1)];
    out.mu[static_cast<std::size_t>(pair - 1)] = s.mu[static_cast<std::size_t>(new_pair - 1)];
  }
  return out;
}

NormalForm normal_form(const GhzDiagonal3& s) {
  s.validate();
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (BasisIndex flips = 0; flips < 8; ++flips) {
      const LocalRelabeling r{perm, flips};
      GhzDiagonal3 candidate = relabel(s, r);
      const auto& l = candidate.lambda;
      if (l[0] >= l[1] && l[1] >= l[2] && l[2] >= l[3]) {
        return {candidate, r};
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Qubit permutations and flips generate every reordering of the four pairs.
  throw std::logic_error("no relabeling sorts the GHZ-diagonal weights");
}

CriterionReport ghz3_on_normal_form(const GhzDiagonal3& s) {
  return ghz3_biseparability(ghz_diagonal_3(normal_form(s).state));
}

bool is_gme(const GhzDiagonal3& s) { return ghz3_on_normal_form(s).violated; }

Matrix BlockState::matrix() const {
  Matrix m = Matrix::Zero(8, 8);
  for (auto [pair, sign] : {std::pair{k, sign_k}, std::pair{l, sign_l}}) {
    const auto lo = static_cast<Eigen::Index>(rep_of(pair));
    const auto hi = static_cast<Eigen::Index>(rep_of(pair) ^ kFull);
    m(lo, lo) = m(hi, hi) = lambda;
    m(lo, hi) = m(hi, lo) = sign * lambda;
  }
  return m;
}

Bipartition BlockState::partition() const { return Bipartition(kN, rep_of(k) ^ rep_of(l)); }

std::vector<ProductComponent> BlockState::components() const {
  // (|r_k> + s_k|~r_k> +- c(|r_l> + s_l|~r_l>))/2 with c^2 = s_k s_l factorizes
  // across the qubits where r_k and r_l differ.
  const Complex c = (sign_k * sign_l > 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
  const BasisIndex rk = rep_of(k);
  const BasisIndex rl = rep_of(l);
  std::vector<ProductComponent> out;
  for (double pm : {1.0, -1.0}) {
    Vector v = Vector::Zero(8);
    v(static_cast<Eigen::Index>(rk)) += 0.5;
    v(static_cast<Eigen::Index>(rk ^ kFull)) += 0.5 * sign_k;
    v(static_cast<Eigen::Index>(rl)) += 0.5 * pm * c;
    v(static_cast<Eigen::Index>(rl ^ kFull)) += 0.5 * pm * c * static_cast<double>(sign_l);
    out.push_back({0.5, PureState(kN, std::move(v))});
  }
  return out;
}

BlockState block_state(int k, int l, double lambda, int sign) {
  if (k < 1 || k > 4 || l < 1 || l > 4 || k == l) {
    throw std::invalid_argument("block pairs must be distinct indices in 1..4");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("block weight must be nonnegative");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("block sign must be +1 or -1");
  }
  return {k, l, lambda, sign, sign};
}

GreedyAllocation greedy_allocation(const std::array<double, 4>& lambda) {
  GreedyAllocation g;
  g.alpha4 = std::max(0.0, lambda[1] + lambda[2] + lambda[3] - lambda[0]);
  const double r4 = std::min(lambda[3], g.alpha4 / 3.0);
  g.alpha3 = g.alpha4 - r4;
  const double r3 = std::min(lambda[2], g.alpha3 / 2.0);
  g.alpha2 = g.alpha3 - r3;
  const double r2 = std::min(lambda[1], g.alpha2);
  g.residual = {r2, r3, r4};
  return g;
}

Matrix BiseparableDecomposition::reconstruct(int n_qubits) const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& term : terms) {
    for (const auto& c : term.components) {
      const Vector v = c.state.amplitudes() / c.state.norm();
      m += term.weight * c.probability * (v * v.adjoint());
    }
  }
  for (const auto& [index, weight] : residue) {
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) += weight;
  }
  return m;
}

std::size_t BiseparableDecomposition::block_count() const {
  std::set<std::string> names;
  for (const auto& t : terms) {
    names.insert(t.block.substr(0, t.block.find(')') + 1));
  }
  return names.size();
}

GenuinelyEntangledError::GenuinelyEntangledError(CriterionReport report)
    : std::runtime_error("state is genuinely multipartite entangled (GHZ criterion margin " +
                         std::to_string(report.margin) + ")"),
      report_(std::move(report)) {}

BiseparableDecomposition decompose(const GhzDiagonal3& s) {
  s.validate();
  const CriterionReport verdict = ghz3_on_normal_form(s);
  if (verdict.violated) {
    throw GenuinelyEntangledError(verdict);
  }
  const NormalForm nf = normal_form(s);
  std::array<double, 4> lam = nf.state.lambda;
  const std::array<double, 4>& mu = nf.state.mu;
  const double raw_trace = 2.0 * (lam[0] + lam[1] + lam[2] + lam[3]);
  const double tiny = kNegligible * raw_trace;

  BiseparableDecomposition out;

  // Excess weight on pair 1 beyond what the blocks can carry is a mixture of
  // |000><000| and |111><111|. Within tolerance |mu_1| may exceed the sum.
  const double others = lam[1] + lam[2] + lam[3];
  double residue = 0.0;
  if (lam[0] > others) {
    const double top = std::max(std::min(std::abs(mu[0]), others), lam[1]);
    residue = lam[0] - top;
    lam[0] = top;
  }

  std::array<double, 4> ratio{};
  for (std::size_t i = 0; i < 4; ++i) {
    ratio[i] = lam[i] > 0.0 ? std::clamp(mu[i] / lam[i], -1.0, 1.0) : 0.0;
  }

  const GreedyAllocation g = greedy_allocation(lam);
  const auto [r2, r3, r4] = g.residual;
  if (r2 > r3 + r4 + 1e-12 * raw_trace) {
    throw std::logic_error("greedy allocation left an infeasible residual");
  }

  struct Block {
    int k, l;
    double amount;
  };
  const std::vector<Block> blocks = {
      {1, 2, lam[1] - r2},
      {1, 3, lam[2] - r3},
      {1, 4, lam[3] - r4},
      {2, 3, 0.5 * (r2 + r3 - r4)},
      {2, 4, 0.5 * (r2 + r4 - r3)},
      {3, 4, std::max(0.0, 0.5 * (r3 + r4 - r2))},
  };

  const double scale = nf.state.scale();
  for (const auto& b : blocks) {
    if (b.amount <= tiny) {
      continue;
    }
    const double tk = ratio[static_cast<std::size_t>(b.k - 1)];
    const double tl = ratio[static_cast<std::size_t>(b.l - 1)];
    // Sign-mixture with mean sign t on each pair: weights (1 + s t)/2.
    for (int sk : {1, -1}) {
      for (int sl : {1, -1}) {
        const double w = 0.25 * (1.0 + sk * tk) * (1.0 + sl * tl);
        if (w * b.amount <= tiny) {
          continue;
        }
        const BlockState block{b.k, b.l, b.amount, sk, sl};
        BiseparableTerm term{4.0 * b.amount * w / scale, nf.relabeling.to_original(block.partition()), {}, ""};
        for (auto& c : block.components()) {
          Vector v(8);
          for (BasisIndex x = 0; x < 8; ++x) {
            v(static_cast<Eigen::Index>(x)) = c.state.amplitude(nf.relabeling.apply(x));
          }
          term.components.push_back({c.probability, PureState(kN, std::move(v))});
        }
        term.block = "(" + std::to_string(b.k) + "," + std::to_string(b.l) + ")" + (sk > 0 ? "+" : "-") +
                     (sl > 0 ? "+" : "-");
        out.terms.push_back(std::move(term));
      }
    }
  }
  if (residue > tiny) {
    out.residue.emplace_back(nf.relabeling.invert(0), residue / scale);
    out.residue.emplace_back(nf.relabeling.invert(kFull), residue / scale);
  }
  return out;
}

VerificationResult verify_decomposition(const DensityMatrix& rho, const BiseparableDecomposition& d) {
  VerificationResult res;
  const int n = rho.n_qubits();
  for (const auto& term : d.terms) {
    if (!(term.weight > 0.0)) {
      res.message = "term " + term.block + " has nonpositive weight";
      return res;
    }
    if (term.partition.n_qubits() != n) {
      res.message = "term " + term.block + " has a partition of the wrong size";
      return res;
    }
    for (const auto& c : term.components) {
      if (!(c.probability > 0.0) || c.state.n_qubits() != n) {
        res.message = "term " + term.block + " has an invalid component";
        return res;
      }
      const double norm = c.state.norm();
      const double defect = std::abs(schmidt_coefficients(c.state, term.partition)(0) - norm) / norm;
      res.max_schmidt_defect = std::max(res.max_schmidt_defect, defect);
    }
  }
  for (const auto& [index, weight] : d.residue) {
    if (!(weight > 0.0) || index >= rho.dim()) {
      res.message = "invalid fully separable residue entry";
      return res;
    }
  }
  res.max_reconstruction_error = (d.reconstruct(n) - rho.matrix()).cwiseAbs().maxCoeff();
  if (res.max_schmidt_defect > 1e-10) {
    res.message = "a component is entangled across its claimed partition";
    return res;
  }
  if (res.max_reconstruction_error > 1e-10 * rho.trace()) {
    res.message = "mixture does not reconstruct the state";
    return res;
  }
  res.ok = true;
  res.message = "ok";
  return res;
}

}  // namespace sepcrit

#include "sepcrit/derive.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace sepcrit {

OffdiagonalBound estimate_offdiagonal(const IndexTuple& i, const IndexTuple& j, const Bipartition& p) {
  if (i.n_qubits() != p.n_qubits() || j.n_qubits() != p.n_qubits()) {
    throw std::invalid_argument("index tuples and bipartition sizes differ");
  }
  if (i == j) {
    throw std::invalid_argument("estimate_offdiagonal needs two distinct tuples");
  }
  const BasisIndex a = p.side_a();
  const BasisIndex b = p.side_b();
  const BasisIndex diff = i.index() ^ j.index();
  if ((diff & a) != 0 && (diff & b) != 0) {
    const BasisIndex x = (i.index() & a) | (j.index() & b);
    const BasisIndex y = (j.index() & a) | (i.index() & b);
    return {BoundKind::kCrossing, std::min(x, y), std::max(x, y)};
  }
  return {BoundKind::kInternal, std::min(i.index(), j.index()), std::max(i.index(), j.index())};
}

DerivedCriterion::DerivedCriterion(std::string name, int n_qubits,
                                   std::vector<std::pair<BasisIndex, BasisIndex>> pairs,
                                   std::vector<SqrtTerm> sqrt_terms, std::vector<DiagonalTerm> diagonal_terms)
    : name_(std::move(name)),
      n_(n_qubits),
      pairs_(std::move(pairs)),
      sqrt_terms_(std::move(sqrt_terms)),
      diagonal_terms_(std::move(diagonal_terms)) {
  std::sort(sqrt_terms_.begin(), sqrt_terms_.end(),
            [](const SqrtTerm& l, const SqrtTerm& r) { return std::tie(l.a, l.b) < std::tie(r.a, r.b); });
  std::sort(diagonal_terms_.begin(), diagonal_terms_.end(),
            [](const DiagonalTerm& l, const DiagonalTerm& r) { return l.index < r.index; });
}

CriterionReport DerivedCriterion::evaluate(const DensityMatrix& rho) const {
  if (rho.n_qubits() != n_) {
    throw std::invalid_argument("derived criterion '" + name_ + "' needs " + std::to_string(n_) + " qubits");
  }
  double lhs = 0.0;
  for (const auto& [i, j] : pairs_) {
    lhs += std::abs(rho(i, j));
  }
  double rhs = 0.0;
  for (const auto& t : sqrt_terms_) {
    rhs += t.coefficient * std::sqrt(std::max(rho.diagonal(t.a), 0.0) * std::max(rho.diagonal(t.b), 0.0));
  }
  for (const auto& t : diagonal_terms_) {
    rhs += t.coefficient * rho.diagonal(t.index);
  }
  return make_report(name_, lhs, rhs, rho.trace());
}

DerivedCriterion derive_biseparability_criterion(const PureState& target, std::string name) {
  const int n = target.n_qubits();
  if (n < 2) {
    throw std::invalid_argument("criterion derivation needs at least two qubits");
  }
  const double cutoff = 1e-14 * target.amplitudes().cwiseAbs().maxCoeff();
  std::vector<BasisIndex> support;
  for (BasisIndex i = 0; i < target.dim(); ++i) {
    if (std::abs(target.amplitude(i)) > cutoff) {
      support.push_back(i);
    }
  }
  if (support.size() < 2) {
    throw std::invalid_argument("target needs at least two support indices");
  }
  const std::set<BasisIndex> in_support(support.begin(), support.end());

  std::vector<std::pair<BasisIndex, BasisIndex>> pairs;
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      pairs.emplace_back(support[a], support[b]);
    }
  }

  std::map<std::pair<BasisIndex, BasisIndex>, double> sqrt_coeff;
  std::map<BasisIndex, double> diag_coeff;

  for (const Bipartition& p : all_bipartitions(n)) {
    std::map<std::pair<BasisIndex, BasisIndex>, int> multiplicity;
    std::map<BasisIndex, double> needed;

    for (const auto& [i, j] : pairs) {
      const auto bound = estimate_offdiagonal(IndexTuple(n, i), IndexTuple(n, j), p);
      if (bound.kind != BoundKind::kCrossing) {
        continue;
      }
      if (in_support.count(bound.first) && in_support.count(bound.second)) {
        needed[bound.first] += 0.5;
        needed[bound.second] += 0.5;
      } else {
        ++multiplicity[{bound.first, bound.second}];
      }
    }

    // Internal pairs: blocks of support indices sharing their side-A digits
    // (they differ on B only) or sharing their side-B digits.
    for (BasisIndex mask : {p.side_a(), p.side_b()}) {
      std::map<BasisIndex, std::vector<BasisIndex>> blocks;
      for (BasisIndex s : support) {
        blocks[s & mask].push_back(s);
      }
      for (const auto& [key, members] : blocks) {
        const double c = 0.5 * static_cast<double>(members.size() - 1);
        if (c > 0.0) {
          for (BasisIndex s : members) {
            needed[s] += c;
          }
        }
      }
    }

    for (const auto& [term, count] : multiplicity) {
      double& c = sqrt_coeff[term];
      c = std::max(c, static_cast<double>(count));
    }
    for (const auto& [index, c] : needed) {
      double& d = diag_coeff[index];
      d = std::max(d, c);
    }
  }

  std::vector<DerivedCriterion::SqrtTerm> sqrt_terms;
  for (const auto& [term, c] : sqrt_coeff) {
    sqrt_terms.push_back({term.first, term.second, c});
  }
  std::vector<DerivedCriterion::DiagonalTerm> diagonal_terms;
  for (const auto& [index, c] : diag_coeff) {
    diagonal_terms.push_back({index, c});
  }
  return DerivedCriterion(std::move(name), n, std::move(pairs), std::move(sqrt_terms),
                          std::move(diagonal_terms));
}

}  // namespace sepcrit

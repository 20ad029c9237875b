#include "sepcrit/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sepcrit {

namespace {

template <typename State>
CriterionReport monomial_impl(const State& rho, const MonomialCriterion& m) {
  if (rho.n_qubits() != m.n_qubits()) {
    throw std::invalid_argument("monomial criterion qubit count does not match state");
  }
  const int n = rho.n_qubits();
  const double lhs = std::abs(rho.entry(0, full_mask(n)));
  // Weighted geometric mean in log space; any zero factor gives 0.
  double log_sum = 0.0;
  bool zero = false;
  for (const auto& [tuple, w] : m.weights()) {
    const double d = rho.diagonal(tuple.index());
    if (!(d > 0.0)) {
      zero = true;
      break;
    }
    log_sum += w * std::log(d);
  }
  const double rhs = zero ? 0.0 : std::exp(log_sum / m.degree());
  return make_report(m.name(), lhs, rhs, rho.trace());
}

struct DenseView {
  const DensityMatrix& rho;
  int n_qubits() const { return rho.n_qubits(); }
  double diagonal(BasisIndex i) const { return rho.diagonal(i); }
  Complex entry(BasisIndex i, BasisIndex j) const { return rho(i, j); }
  double trace() const { return rho.trace(); }
};

IndexTuple t3(const char* digits) { return IndexTuple::parse(digits); }

}  // namespace

MonomialCriterion::MonomialCriterion(std::string name, std::map<IndexTuple, int> weights, int root)
    : name_(std::move(name)), n_(0), weights_(std::move(weights)), root_(root) {
  if (weights_.empty()) {
    throw std::invalid_argument("monomial criterion needs at least one factor");
  }
  n_ = weights_.begin()->first.n_qubits();
  for (const auto& [tuple, w] : weights_) {
    if (tuple.n_qubits() != n_) {
      throw std::invalid_argument("monomial factors have different lengths");
    }
    if (w <= 0) {
      throw std::invalid_argument("monomial weights must be positive");
    }
  }
  if (root <= 0 || !is_balanced(weights_, root)) {
    throw std::invalid_argument("monomial criterion '" + name_ + "' is not balanced");
  }
}

MonomialCriterion MonomialCriterion::from_strings(std::string name,
                                                  const std::vector<std::pair<std::string, int>>& weights,
                                                  int root) {
  std::map<IndexTuple, int> w;
  for (const auto& [digits, weight] : weights) {
    w[IndexTuple::parse(digits)] += weight;
  }
  return MonomialCriterion(std::move(name), std::move(w), root);
}

bool MonomialCriterion::is_balanced(const std::map<IndexTuple, int>& weights, int root) {
  if (weights.empty()) {
    return false;
  }
  const int n = weights.begin()->first.n_qubits();
  for (int q = 0; q < n; ++q) {
    int zeros = 0;
    int ones = 0;
    for (const auto& [tuple, w] : weights) {
      (tuple.digit(q) == 0 ? zeros : ones) += w;
    }
    if (zeros != root || ones != root) {
      return false;
    }
  }
  return true;
}

CriterionReport fullsep_monomial(const DensityMatrix& rho, const MonomialCriterion& m) {
  return monomial_impl(DenseView{rho}, m);
}

CriterionReport fullsep_monomial(const XState& rho, const MonomialCriterion& m) {
  return monomial_impl(rho, m);
}

MonomialCriterion fullsep_base_monomial() {
  return MonomialCriterion::from_strings(
      "fullsep-base", {{"001", 1}, {"010", 1}, {"011", 1}, {"100", 1}, {"101", 1}, {"110", 1}}, 3);
}

MonomialCriterion substitute(const MonomialCriterion& m, const std::string& name, const IndexTuple& a,
                             const IndexTuple& b, const IndexTuple& c, const IndexTuple& d) {
  auto w = m.weights();
  for (const IndexTuple& t : {a, b}) {
    auto it = w.find(t);
    if (it == w.end()) {
      throw std::invalid_argument("substitution removes a factor the monomial lacks: " + t.str());
    }
    if (--it->second == 0) {
      w.erase(it);
    }
  }
  ++w[c];
  ++w[d];
  return MonomialCriterion(name, std::move(w), m.root());
}

std::vector<MonomialCriterion> three_qubit_substitution_monomials() {
  const MonomialCriterion base = fullsep_base_monomial();
  std::vector<MonomialCriterion> out{base};
  // rho_aa rho_bb -> rho_cc rho_dd, written with 1-based matrix positions in the names.
  out.push_back(substitute(base, "fullsep-sub-22.33>11.44", t3("001"), t3("010"), t3("000"), t3("011")));
  out.push_back(substitute(base, "fullsep-sub-66.77>55.88", t3("101"), t3("110"), t3("100"), t3("111")));
  out.push_back(substitute(base, "fullsep-sub-22.55>11.66", t3("001"), t3("100"), t3("000"), t3("101")));
  out.push_back(substitute(base, "fullsep-sub-44.77>33.88", t3("011"), t3("110"), t3("010"), t3("111")));
  out.push_back(substitute(base, "fullsep-sub-33.55>11.77", t3("010"), t3("100"), t3("000"), t3("110")));
  out.push_back(substitute(base, "fullsep-sub-44.66>22.88", t3("011"), t3("101"), t3("001"), t3("111")));
  out.push_back(MonomialCriterion::from_strings(
      "fullsep-quartic-22.33.55.88", {{"001", 1}, {"010", 1}, {"100", 1}, {"111", 1}}, 2));
  return out;
}

bool SuiteResult::any_violated() const {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.violated; });
}

SuiteResult substitution_suite(const DensityMatrix& rho) {
  if (rho.n_qubits() != 3) {
    throw std::invalid_argument("substitution suite needs a 3-qubit state");
  }
  static const std::vector<MonomialCriterion> monomials = three_qubit_substitution_monomials();
  SuiteResult out;
  for (const auto& m : monomials) {
    out.reports.push_back(fullsep_monomial(rho, m));
  }
  for (std::size_t i = 1; i < out.reports.size(); ++i) {
    if (out.reports[i].margin > out.reports[out.best].margin) {
      out.best = i;
    }
  }
  return out;
}

}  // namespace sepcrit

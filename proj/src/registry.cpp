#include "sepcrit/registry.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <stdexcept>

#include "sepcrit/derive.hpp"
#include "sepcrit/families.hpp"
#include "sepcrit/monomial.hpp"

namespace sepcrit {

namespace {

int parse_int(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw std::invalid_argument("cannot parse target '" + whole + "'");
  }
  return v;
}

CriterionReport w3_fidelity_from_state(const DensityMatrix& rho) {
  const DensityMatrix unit = rho.normalized();
  std::array<double, 8> d{};
  for (BasisIndex i = 0; i < 8; ++i) {
    d[i] = std::max(unit.diagonal(i), 0.0);
  }
  double total = 0.0;
  for (double v : d) {
    total += v;
  }
  for (double& v : d) {
    v /= total;
  }
  const double f = std::clamp(fidelity(unit, w(3)), 0.0, 1.0);
  // Rescale so margins follow the input's trace like every other criterion.
  const auto r = w3_fidelity_form(f, d);
  return make_report(r.criterion_id, r.lhs * rho.trace(), r.rhs * rho.trace(), rho.trace());
}

}  // namespace

PureState parse_target(const std::string& name) {
  if (name == "d4") {
    return dicke(4, 2);
  }
  if (name.rfind("ghz", 0) == 0) {
    return ghz(parse_int(name.substr(3), name));
  }
  if (name.rfind("dicke", 0) == 0) {
    const auto rest = name.substr(5);
    const auto us = rest.find('_');
    if (us == std::string::npos) {
      throw std::invalid_argument("dicke target needs the form dicke<N>_<k>");
    }
    return dicke(parse_int(rest.substr(0, us), name), parse_int(rest.substr(us + 1), name));
  }
  if (name.rfind("w", 0) == 0) {
    return w(parse_int(name.substr(1), name));
  }
  throw std::invalid_argument("unknown target state '" + name + "'");
}

Criterion make_criterion(const std::string& id) {
  using C = CriterionClass;
  if (id == "ghz3") return {id, C::kBiseparability, 3, ghz3_biseparability};
  if (id == "ghzN") {
    return {id, C::kBiseparability, 0, [](const DensityMatrix& r) { return ghzN_biseparability(r); }};
  }
  if (id == "w3") return {id, C::kBiseparability, 3, w3_biseparability};
  if (id == "w4") return {id, C::kBiseparability, 4, w4_biseparability};
  if (id == "dicke4") return {id, C::kBiseparability, 4, dicke4_biseparability};
  if (id == "w3-fidelity") return {id, C::kBiseparability, 3, w3_fidelity_from_state};
  if (id == "fullsep-base") return {id, C::kFullSeparability, 3, fullsep_base};
  if (id == "fullsep-w3") return {id, C::kFullSeparability, 3, fullsep_w3};
  if (id == "fullsep-suite") {
    return {id, C::kFullSeparability, 3, [](const DensityMatrix& r) {
              auto suite = substitution_suite(r);
              CriterionReport best = suite.best_report();
              best.criterion_id = "fullsep-suite:" + best.criterion_id;
              return best;
            }};
  }
  if (id.rfind("derived:", 0) == 0) {
    const std::string target = id.substr(8);
    auto derived = std::make_shared<const DerivedCriterion>(derive_biseparability_criterion(parse_target(target), id));
    return {id, C::kBiseparability, derived->n_qubits(),
            [derived](const DensityMatrix& r) { return derived->evaluate(r); }};
  }
  throw std::invalid_argument("unknown criterion id '" + id + "'");
}

std::vector<std::string> builtin_criteria_for(int n_qubits) {
  std::vector<std::string> out;
  for (const char* id : {"ghz3", "ghzN", "w3", "w4", "dicke4", "w3-fidelity", "fullsep-base", "fullsep-suite",
                         "fullsep-w3"}) {
    if (make_criterion(id).applies_to(n_qubits)) {
      out.emplace_back(id);
    }
  }
  return out;
}

}  // namespace sepcrit

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sepcrit/criteria.hpp"

namespace sepcrit {

enum class CriterionClass {
  kBiseparability,    ///< violation => genuine multipartite entanglement
  kFullSeparability,  ///< violation => not fully separable
};

using CriterionFn = std::function<CriterionReport(const DensityMatrix&)>;

/// A criterion selected by its stable identifier.
struct Criterion {
  std::string id;
  CriterionClass cls = CriterionClass::kBiseparability;
  int n_qubits = 0;  ///< required qubit count, 0 when any N >= 2 works
  CriterionFn evaluate;

  bool applies_to(int n) const { return n_qubits == 0 ? n >= 2 : n == n_qubits; }
};

/// Identifiers: ghz3, ghzN, w3, w4, dicke4, fullsep-base, fullsep-suite,
/// fullsep-w3, w3-fidelity, and derived:<target> with <target> one of
/// ghz<N>, w<N>, dicke<N>_<k> (d4 is an alias of dicke4_2).
/// `fullsep-suite` reports the best margin of the substitution suite.
/// Throws std::invalid_argument for unknown ids.
Criterion make_criterion(const std::string& id);

/// Target state named as in derived:<target>.
PureState parse_target(const std::string& name);

/// Built-in ids applicable to an N-qubit state (derived ones excluded).
std::vector<std::string> builtin_criteria_for(int n_qubits);

}  // namespace sepcrit

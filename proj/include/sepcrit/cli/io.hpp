#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sepcrit/decompose.hpp"
#include "sepcrit/density_matrix.hpp"
#include "sepcrit/families.hpp"

namespace sepcrit::cli {

/// Malformed or inconsistent input documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed input file: a dense matrix, or GHZ-diagonal parameters together
/// with their dense matrix.
struct StateInput {
  int n_qubits = 0;
  std::optional<DensityMatrix> rho;
  std::optional<GhzDiagonal3> ghz_diagonal;
  std::string descriptor;

  const DensityMatrix& matrix() const { return *rho; }
};

/// Accepts {"n": N, "rows": [[[re, im], ...], ...]} or
/// {"n": 3, "ghz_diagonal": {"lambda": [4], "mu": [4]}}. The lambda and mu
/// arrays may also sit at the top level. Throws ParseError.
StateInput parse_state(const std::string& text, const std::string& descriptor = "<memory>");
StateInput read_state_file(const std::string& path);

nlohmann::ordered_json state_to_json(const DensityMatrix& rho);
nlohmann::ordered_json ghz_diagonal_to_json(const GhzDiagonal3& params);

nlohmann::ordered_json report_to_json(const CriterionReport& r);
nlohmann::ordered_json decomposition_to_json(const BiseparableDecomposition& d);
nlohmann::ordered_json verification_to_json(const VerificationResult& v);

/// Shortest decimal that round-trips the double.
std::string format_number(double v);

}  // namespace sepcrit::cli

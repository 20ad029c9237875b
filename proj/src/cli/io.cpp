#include "sepcrit/cli/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sepcrit::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

double number(const json& v, const std::string& what) {
  if (!v.is_number()) {
    throw ParseError(what + " must be a number");
  }
  return v.get<double>();
}

std::array<double, 4> four_numbers(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 4) {
    throw ParseError(what + " must be an array of 4 numbers");
  }
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = number(v[i], what);
  }
  return out;
}

StateInput parse_ghz_diagonal(int n, const json& doc, const std::string& descriptor) {
  if (n != 3) {
    throw ParseError("GHZ-diagonal input requires n = 3");
  }
  if (!doc.contains("lambda") || !doc.contains("mu")) {
    throw ParseError("GHZ-diagonal input needs lambda and mu");
  }
  GhzDiagonal3 params;
  params.lambda = four_numbers(doc["lambda"], "lambda");
  params.mu = four_numbers(doc["mu"], "mu");
  if (doc.contains("normalization")) {
    params.normalization = number(doc["normalization"], "normalization");
  }
  StateInput out;
  out.n_qubits = 3;
  out.descriptor = descriptor;
  try {
    out.rho = ghz_diagonal_3(params);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  out.ghz_diagonal = params;
  return out;
}

}  // namespace

StateInput parse_state(const std::string& text, const std::string& descriptor) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("input must be a JSON object");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("input needs an integer field n");
  }
  const int n = doc["n"].get<int>();
  if (n < 1 || n > kMaxDenseQubits) {
    throw ParseError("n must be between 1 and " + std::to_string(kMaxDenseQubits));
  }
  if (doc.contains("ghz_diagonal")) {
    return parse_ghz_diagonal(n, doc["ghz_diagonal"], descriptor);
  }
  if (doc.contains("lambda") || doc.contains("mu")) {
    return parse_ghz_diagonal(n, doc, descriptor);
  }
  if (!doc.contains("rows")) {
    throw ParseError("input needs rows or ghz_diagonal");
  }
  const json& rows = doc["rows"];
  const std::size_t dim = std::size_t{1} << n;
  if (!rows.is_array() || rows.size() != dim) {
    throw ParseError("rows must hold 2^n = " + std::to_string(dim) + " rows; dimension is not 2^n");
  }
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim) {
      throw ParseError("row " + std::to_string(i) + " must hold " + std::to_string(dim) + " entries");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const json& e = rows[i][j];
      if (!e.is_array() || e.size() != 2) {
        throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") must be [re, im]");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(number(e[0], "re"), number(e[1], "im"));
    }
  }
  StateInput out;
  out.n_qubits = n;
  out.descriptor = descriptor;
  try {
    out.rho = DensityMatrix(std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return out;
}

StateInput read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str(), path);
}

ordered_json state_to_json(const DensityMatrix& rho) {
  ordered_json rows = ordered_json::array();
  for (BasisIndex i = 0; i < rho.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (BasisIndex j = 0; j < rho.dim(); ++j) {
      row.push_back({rho(i, j).real(), rho(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return {{"n", rho.n_qubits()}, {"rows", std::move(rows)}};
}

ordered_json ghz_diagonal_to_json(const GhzDiagonal3& params) {
  ordered_json g = {{"lambda", params.lambda}, {"mu", params.mu}};
  if (params.normalization) {
    g["normalization"] = *params.normalization;
  }
  return {{"n", 3}, {"ghz_diagonal", std::move(g)}};
}

ordered_json report_to_json(const CriterionReport& r) {
  return {{"criterion", r.criterion_id}, {"lhs", r.lhs},         {"rhs", r.rhs},
          {"margin", r.margin},         {"tolerance", r.tolerance}, {"violated", r.violated}};
}

ordered_json decomposition_to_json(const BiseparableDecomposition& d) {
  ordered_json terms = ordered_json::array();
  for (const auto& t : d.terms) {
    ordered_json comps = ordered_json::array();
    for (const auto& c : t.components) {
      ordered_json amps = ordered_json::array();
      for (BasisIndex i = 0; i < c.state.dim(); ++i) {
        amps.push_back({c.state.amplitude(i).real(), c.state.amplitude(i).imag()});
      }
      comps.push_back({{"probability", c.probability}, {"amplitudes", std::move(amps)}});
    }
    terms.push_back({{"block", t.block},
                     {"partition", t.partition.label()},
                     {"weight", t.weight},
                     {"components", std::move(comps)}});
  }
  ordered_json residue = ordered_json::array();
  for (const auto& [index, weight] : d.residue) {
    residue.push_back({{"index", IndexTuple(3, index).str()}, {"weight", weight}});
  }
  return {{"blocks", d.block_count()}, {"terms", std::move(terms)}, {"residue", std::move(residue)}};
}

ordered_json verification_to_json(const VerificationResult& v) {
  return {{"ok", v.ok},
          {"max_reconstruction_error", v.max_reconstruction_error},
          {"max_schmidt_defect", v.max_schmidt_defect},
          {"message", v.message}};
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace sepcrit::cli

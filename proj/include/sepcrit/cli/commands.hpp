#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sepcrit/cli/io.hpp"
#include "sepcrit/criteria.hpp"
#include "sepcrit/decompose.hpp"

namespace sepcrit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParseError = 2;

enum class Verdict { kGmeCertified, kBiseparableCertified, kNotFullySeparable, kUndetected };

std::string to_string(Verdict v);

struct AnalyzeOptions {
  std::vector<std::string> criteria;  ///< empty: every applicable built-in
  bool filter_opt = false;
  int restarts = 20;
  int budget = 2000;
  std::uint64_t seed = 1;
};

struct FilteredFinding {
  std::string criterion_id;
  CriterionReport report;
  std::string status;
};

struct AnalysisReport {
  std::string input;
  std::vector<CriterionReport> reports;
  std::vector<FilteredFinding> filtered;
  Verdict verdict = Verdict::kUndetected;
  std::string certified_by;  ///< criterion or "decompose"
  std::optional<BiseparableDecomposition> certificate;
  std::vector<std::string> notes;
};

/// Evaluates the criteria, optionally searches local filters, and for
/// GHZ-diagonal input tries a biseparability certificate. GME-certified
/// needs a violated biseparability criterion; biseparable-certified needs a
/// verified certificate; not-fully-separable needs a violated
/// full-separability criterion.
AnalysisReport analyze(const StateInput& input, const AnalyzeOptions& options);

nlohmann::ordered_json analysis_to_json(const AnalysisReport& r);

/// Threshold and reference rows for one qubit count of a sweep.
struct SweepThreshold {
  int n_qubits = 0;
  std::string criterion_id;
  double threshold = 0.0;
  std::optional<double> fullsep_reference;  ///< ghz-noise only
};

/// Families: ghz-noise, w-noise, dicke-noise. `criterion` empty picks the
/// family's default for each N. CSV columns n,p,lhs,rhs,margin,violated on
/// `points` evenly spaced p in [0, 1].
std::vector<SweepThreshold> run_sweep(const std::string& family, int n_min, int n_max, const std::string& criterion,
                                      double tol, int points, std::ostream& csv);

/// CSV columns t,x,lhs,rhs,margin,gme on `steps` + 1 times in [0, t_max].
void run_decohere(int n_qubits, double gamma, double t_max, int steps, std::ostream& csv);

/// Runs the command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepcrit::cli

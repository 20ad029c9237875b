#include "sepcrit/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "sepcrit/decoherence.hpp"
#include "sepcrit/filters.hpp"
#include "sepcrit/oracle.hpp"
#include "sepcrit/registry.hpp"

namespace sepcrit::cli {

using nlohmann::ordered_json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kGmeCertified:
      return "GME-certified";
    case Verdict::kBiseparableCertified:
      return "biseparable-certified";
    case Verdict::kNotFullySeparable:
      return "not-fully-separable";
    case Verdict::kUndetected:
      return "undetected";
  }
  return "undetected";
}

AnalysisReport analyze(const StateInput& input, const AnalyzeOptions& options) {
  const DensityMatrix& rho = input.matrix();
  const int n = input.n_qubits;
  AnalysisReport out;
  out.input = input.descriptor;

  std::vector<std::string> ids = options.criteria;
  if (ids.empty()) {
    ids = builtin_criteria_for(n);
  }
  std::vector<Criterion> criteria;
  for (const auto& id : ids) {
    Criterion c = make_criterion(id);
    if (!c.applies_to(n)) {
      throw std::invalid_argument("criterion '" + id + "' does not apply to " + std::to_string(n) + " qubits");
    }
    criteria.push_back(std::move(c));
  }

  std::string gme_by;
  std::string nfs_by;
  for (const auto& c : criteria) {
    const CriterionReport r = c.evaluate(rho);
    out.reports.push_back(r);
    if (!r.violated) continue;
    if (c.cls == CriterionClass::kBiseparability && gme_by.empty()) gme_by = r.criterion_id;
    if (c.cls == CriterionClass::kFullSeparability && nfs_by.empty()) nfs_by = r.criterion_id;
  }

  if (options.filter_opt && gme_by.empty()) {
    for (const auto& c : criteria) {
      if (c.cls != CriterionClass::kBiseparability) continue;
      const auto res = optimize_violation(rho, c.id, options.restarts, options.budget, options.seed);
      out.filtered.push_back({c.id, res.report, res.status()});
      if (res.violated() && gme_by.empty()) gme_by = c.id + " (filtered)";
    }
  }

  if (!gme_by.empty()) {
    out.verdict = Verdict::kGmeCertified;
    out.certified_by = gme_by;
  } else if (input.ghz_diagonal && !is_gme(*input.ghz_diagonal)) {
    auto d = decompose(*input.ghz_diagonal);
    const auto check = verify_decomposition(rho, d);
    if (check.ok) {
      out.verdict = Verdict::kBiseparableCertified;
      out.certified_by = "decompose";
      out.certificate = std::move(d);
    } else {
      out.notes.push_back("certificate failed verification: " + check.message);
    }
  }
  if (!nfs_by.empty()) {
    if (out.verdict == Verdict::kUndetected) {
      out.verdict = Verdict::kNotFullySeparable;
      out.certified_by = nfs_by;
    } else if (out.verdict == Verdict::kBiseparableCertified) {
      out.notes.push_back("not fully separable by " + nfs_by);
    }
  }

  if (n >= 2 && n <= 8) {
    int failed = 0;
    for (const auto& p : all_bipartitions(n)) {
      const auto ppt = ppt_check(rho, p);
      if (!ppt.ok) {
        ++failed;
        out.notes.push_back("ppt fails across " + p.label() + " (min eigenvalue " + format_number(ppt.min_eigenvalue) +
                            ")");
      }
    }
    if (failed == 0) out.notes.push_back("ppt-all-pass");
  }
  const auto psd = rho.psd_check();
  if (!psd.ok) {
    out.notes.push_back("input is not positive semidefinite (min eigenvalue " + format_number(psd.min_eigenvalue) +
                        ")");
  }
  return out;
}

ordered_json analysis_to_json(const AnalysisReport& r) {
  ordered_json reports = ordered_json::array();
  for (const auto& rep : r.reports) reports.push_back(report_to_json(rep));
  ordered_json j = {{"input", r.input}, {"verdict", to_string(r.verdict)}, {"certified_by", r.certified_by},
                    {"reports", std::move(reports)}};
  if (!r.filtered.empty()) {
    ordered_json f = ordered_json::array();
    for (const auto& x : r.filtered) {
      auto rep = report_to_json(x.report);
      rep["criterion"] = x.criterion_id;
      rep["status"] = x.status;
      f.push_back(std::move(rep));
    }
    j["filtered"] = std::move(f);
  }
  if (r.certificate) j["certificate"] = decomposition_to_json(*r.certificate);
  j["notes"] = r.notes;
  return j;
}

namespace {

std::string default_criterion(const std::string& family, int n) {
  if (family == "ghz-noise") return "ghzN";
  if (family == "w-noise") {
    if (n == 3) return "w3";
    if (n == 4) return "w4";
    return "derived:w" + std::to_string(n);
  }
  if (family == "dicke-noise") {
    if (n == 4) return "dicke4";
    return "derived:dicke" + std::to_string(n) + "_" + std::to_string(n / 2);
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

PureState family_target(const std::string& family, int n) {
  if (family == "ghz-noise") return ghz(n);
  if (family == "w-noise") return w(n);
  return dicke(n, n / 2);
}

void write_csv_row(std::ostream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

}  // namespace

std::vector<SweepThreshold> run_sweep(const std::string& family, int n_min, int n_max, const std::string& criterion,
                                      double tol, int points, std::ostream& csv) {
  if (n_min < 2 || n_max < n_min) {
    throw std::invalid_argument("qubit range must satisfy 2 <= n_min <= n_max");
  }
  if (points < 2) {
    throw std::invalid_argument("a sweep needs at least two points");
  }
  write_csv_row(csv, {"n", "p", "lhs", "rhs", "margin", "violated"});
  std::vector<SweepThreshold> out;
  for (int n = n_min; n <= n_max; ++n) {
    const std::string id = criterion.empty() ? default_criterion(family, n) : criterion;
    std::function<CriterionReport(double)> eval;
    if (family == "ghz-noise" && id == "ghzN") {
      eval = [n](double p) { return ghzN_biseparability(ghz_white_noise(n, p)); };
    } else {
      default_criterion(family, n);  // rejects unknown families
      if (n > kMaxDenseQubits) {
        throw std::invalid_argument("dense sweeps support at most " + std::to_string(kMaxDenseQubits) + " qubits");
      }
      auto c = std::make_shared<Criterion>(make_criterion(id));
      if (!c->applies_to(n)) {
        throw std::invalid_argument("criterion '" + id + "' does not apply to " + std::to_string(n) + " qubits");
      }
      const auto fam = white_noise_family(family_target(family, n));
      eval = [c, fam](double p) { return c->evaluate(fam(p)); };
    }
    for (int k = 0; k < points; ++k) {
      const double p = static_cast<double>(k) / (points - 1);
      const auto r = eval(p);
      write_csv_row(csv, {std::to_string(n), format_number(p), format_number(r.lhs), format_number(r.rhs),
                          format_number(r.margin), csv_bool(r.violated)});
    }
    SweepThreshold t{n, id, threshold_bisection([&](double p) { return eval(p).margin; }, 0.0, 1.0, tol), {}};
    if (family == "ghz-noise") t.fullsep_reference = 1.0 / (1.0 + std::ldexp(1.0, 1 - n));
    out.push_back(t);
  }
  return out;
}

void run_decohere(int n_qubits, double gamma, double t_max, int steps, std::ostream& csv) {
  if (steps < 1 || !(t_max > 0.0)) {
    throw std::invalid_argument("decohere needs steps >= 1 and t_max > 0");
  }
  write_csv_row(csv, {"t", "x", "lhs", "rhs", "margin", "gme"});
  for (int k = 0; k <= steps; ++k) {
    const double t = t_max * k / steps;
    const auto r = decoherence_report(n_qubits, gamma, t);
    write_csv_row(csv, {format_number(t), format_number(std::exp(-gamma * t)), format_number(r.lhs),
                        format_number(r.rhs), format_number(r.margin), csv_bool(r.violated)});
  }
}

namespace {

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParseError("qubit range must look like 3 or 3..8");
  }
}

// Writes to --out when given, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-element entanglement criteria for multiqubit density matrices", "sepcrit"};
  app.require_subcommand(1);

  std::string out_path;
  std::string file;
  std::vector<std::string> criteria;
  AnalyzeOptions aopt;
  auto* analyze_cmd = app.add_subcommand("analyze", "Evaluate criteria on a state file and classify it");
  analyze_cmd->add_option("file", file, "State file (JSON)")->required();
  analyze_cmd->add_option("--criterion", criteria, "Criterion id (repeatable); default: all applicable");
  analyze_cmd->add_flag("--filter-opt", aopt.filter_opt, "Search local filters for biseparability criteria");
  analyze_cmd->add_option("--restarts", aopt.restarts, "Random restarts besides the identity start")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--budget", aopt.budget, "Evaluations per restart")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--seed", aopt.seed, "Random seed");
  analyze_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  std::string family = "ghz-noise";
  std::string n_range = "3";
  std::string sweep_criterion;
  double tol = 1e-9;
  int points = 101;
  auto* sweep_cmd = app.add_subcommand("sweep", "Noise sweep with per-N thresholds");
  sweep_cmd->add_option("--family", family, "ghz-noise, w-noise or dicke-noise")
      ->check(CLI::IsMember({"ghz-noise", "w-noise", "dicke-noise"}));
  sweep_cmd->add_option("--n", n_range, "Qubit count or range like 3..8");
  sweep_cmd->add_option("--criterion", sweep_criterion, "Criterion id; default depends on family and N");
  sweep_cmd->add_option("--tol", tol, "Bisection tolerance")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--points", points, "Grid points in p")->check(CLI::Range(2, 100000));
  sweep_cmd->add_option("--out", out_path, "CSV file; thresholds then go to stdout");

  auto* decompose_cmd = app.add_subcommand("decompose", "Biseparability certificate for a GHZ-diagonal state");
  decompose_cmd->add_option("file", file, "GHZ-diagonal state file (JSON)")->required();
  decompose_cmd->add_option("--out", out_path, "Write the certificate here instead of stdout");

  int dn = 3;
  double gamma = 1.0;
  double t_max = 0.0;
  int steps = 50;
  auto* decohere_cmd = app.add_subcommand("decohere", "GME survival of relaxing GHZ states");
  decohere_cmd->add_option("--n", dn, "Qubit count")->check(CLI::Range(2, 30));
  decohere_cmd->add_option("--gamma", gamma, "Decay rate")->check(CLI::PositiveNumber);
  decohere_cmd->add_option("--tmax", t_max, "Last time (default: twice the threshold)");
  decohere_cmd->add_option("--steps", steps, "Time steps")->check(CLI::PositiveNumber);
  decohere_cmd->add_option("--tol", tol, "Bisection tolerance")->check(CLI::PositiveNumber);
  decohere_cmd->add_option("--out", out_path, "CSV file; thresholds then go to stdout");

  std::string s_criterion = "ghz3";
  int sn = 0;
  long samples = 10000;
  std::uint64_t seed = 1;
  auto* soundness_cmd = app.add_subcommand("soundness", "Monte-Carlo soundness check of a criterion");
  soundness_cmd->add_option("--criterion", s_criterion, "Criterion id");
  soundness_cmd->add_option("--n", sn, "Qubit count (default: the criterion's)");
  soundness_cmd->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  soundness_cmd->add_option("--seed", seed, "Random seed");
  soundness_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  double f = 0.0;
  std::vector<double> diagonals;
  auto* fidelity_cmd = app.add_subcommand("fidelity", "W-state fidelity test from measured data");
  fidelity_cmd->add_option("--F", f, "Measured fidelity with the W state")->required();
  fidelity_cmd->add_option("--diagonals", diagonals, "The 8 diagonal populations")->required()->expected(8);
  fidelity_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }

  try {
    if (analyze_cmd->parsed()) {
      aopt.criteria = criteria;
      const auto report = analyze(read_state_file(file), aopt);
      Sink sink(out_path, out);
      sink.stream() << analysis_to_json(report).dump(2) << '\n';
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      const auto [lo, hi] = parse_range(n_range);
      Sink sink(out_path, out);
      const auto thresholds = run_sweep(family, lo, hi, sweep_criterion, tol, points, sink.stream());
      std::ostream& summary = sink.to_file() ? out : err;
      summary << "n,criterion,threshold,fullsep_reference\n";
      for (const auto& t : thresholds) {
        summary << t.n_qubits << ',' << t.criterion_id << ',' << format_number(t.threshold) << ','
                << (t.fullsep_reference ? format_number(*t.fullsep_reference) : "") << '\n';
      }
      return kExitOk;
    }
    if (decompose_cmd->parsed()) {
      const auto input = read_state_file(file);
      if (!input.ghz_diagonal) {
        throw ParseError("decompose needs GHZ-diagonal input (ghz_diagonal with lambda and mu)");
      }
      ordered_json j;
      try {
        const auto d = decompose(*input.ghz_diagonal);
        const auto check = verify_decomposition(input.matrix(), d);
        if (!check.ok) {
          err << "error: certificate failed verification: " << check.message << '\n';
          return kExitFailure;
        }
        j = {{"verdict", to_string(Verdict::kBiseparableCertified)},
             {"certificate", decomposition_to_json(d)},
             {"verification", verification_to_json(check)}};
      } catch (const GenuinelyEntangledError& e) {
        j = {{"verdict", to_string(Verdict::kGmeCertified)}, {"report", report_to_json(e.report())}};
      }
      Sink sink(out_path, out);
      sink.stream() << j.dump(2) << '\n';
      return kExitOk;
    }
    if (decohere_cmd->parsed()) {
      const auto analytic = gme_survival_threshold(dn, gamma);
      const double span = t_max > 0.0 ? t_max : (analytic.unbounded ? 5.0 / gamma : 2.0 * analytic.t);
      Sink sink(out_path, out);
      run_decohere(dn, gamma, span, steps, sink.stream());
      std::ostream& summary = sink.to_file() ? out : err;
      summary << "n,gamma,t_analytic,x_analytic,t_numeric\n";
      if (analytic.unbounded) {
        summary << dn << ',' << format_number(gamma) << ",inf,0,inf\n";
      } else {
        summary << dn << ',' << format_number(gamma) << ',' << format_number(analytic.t) << ','
                << format_number(analytic.x) << ',' << format_number(gme_survival_numeric(dn, gamma, tol)) << '\n';
      }
      return kExitOk;
    }
    if (soundness_cmd->parsed()) {
      const Criterion c = make_criterion(s_criterion);
      const int n = sn > 0 ? sn : (c.n_qubits > 0 ? c.n_qubits : 3);
      const auto r = soundness_sweep(s_criterion, n, samples, seed);
      ordered_json j = {{"criterion", r.criterion_id},
                        {"n", r.n_qubits},
                        {"samples", r.samples},
                        {"product_states_only", r.product_states_only},
                        {"max_margin", r.max_margin},
                        {"worst_seed", r.worst_seed},
                        {"passed", r.passed}};
      if (!r.passed) j["reproducer"] = r.reproducer;
      Sink sink(out_path, out);
      sink.stream() << j.dump(2) << '\n';
      return r.passed ? kExitOk : kExitFailure;
    }
    if (fidelity_cmd->parsed()) {
      std::array<double, 8> d{};
      std::copy(diagonals.begin(), diagonals.end(), d.begin());
      const auto r = w3_fidelity_form(f, d);
      Sink sink(out_path, out);
      sink.stream() << report_to_json(r).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace sepcrit::cli

// bellpair: two-qubit entanglement and CHSH-violation toolkit.
//
// Subcommands: analyze, family, region, verify, normal-form. All numeric
// output is JSON or CSV. Beta uses the normalization where the classical
// CHSH bound is 1 and the Tsirelson bound is sqrt(2).
//
// Exit codes: 0 success, 1 invalid input, 2 non-convergence,
//             3 property violation.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellpair/errors.hpp"
#include "bellpair/families.hpp"
#include "bellpair/filtering.hpp"
#include "bellpair/report.hpp"
#include "bellpair/state_json.hpp"
#include "bellpair/tolerances.hpp"
#include "bellpair/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitPropertyViolation = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bellpair::ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_analyze(const std::string& path, double tol, int max_iter) {
  const bellpair::DensityMatrix rho =
      bellpair::state_from_string(read_input(path));
  const bellpair::AnalysisReport report =
      bellpair::analyze_state(rho, tol, max_iter);
  std::cout << bellpair::report_to_json(report).dump(2) << "\n";
  return report.normal_form_converged ? kExitOk : kExitNotConverged;
}

int run_family(const std::string& name, const std::optional<double>& c,
               const std::optional<double>& p, const std::optional<double>& a,
               const std::vector<double>& weights) {
  const auto need = [](const std::optional<double>& v, const char* flag) {
    if (!v) throw bellpair::DomainError(std::string("family: missing ") + flag);
    return *v;
  };
  std::optional<bellpair::DensityMatrix> rho;
  if (name == "pure") {
    rho = bellpair::pure_schmidt(need(c, "--c"));
  } else if (name == "werner") {
    rho = bellpair::werner(need(p, "--p"));
  } else if (name == "mems") {
    rho = bellpair::mems(need(c, "--c"));
  } else if (name == "rank2") {
    rho = bellpair::rank2_family(need(c, "--c"), need(a, "--a"));
  } else if (name == "bell-diag") {
    if (weights.size() != 4)
      throw bellpair::DomainError("family bell-diag: need --weights w1 w2 w3 w4");
    rho = bellpair::bell_diagonal({weights[0], weights[1], weights[2], weights[3]});
  } else {
    throw bellpair::DomainError(
        "family: unknown name (use pure, werner, mems, rank2, bell-diag)");
  }
  std::cout << bellpair::state_to_json(*rho).dump(2) << "\n";
  return kExitOk;
}

int run_region(std::int64_t samples, std::uint64_t seed, const std::string& kind,
               const std::string& out, int threads) {
  const auto parsed = bellpair::region_kind_from_name(kind);
  if (!parsed)
    throw bellpair::DomainError(
        "region: unknown kind (use mixed-hs, pure-haar, bell-diagonal, "
        "werner-line, mems-line, pure-line)");
  const std::string csv = bellpair::region_csv(
      bellpair::region_sample(seed, samples, *parsed, threads));
  if (out == "-") {
    std::cout << csv;
    return kExitOk;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw bellpair::ParseError("region: cannot write " + out);
  file << csv;
  file.flush();
  if (!file) throw bellpair::ParseError("region: write failed for " + out);
  return kExitOk;
}

void print_suite(const bellpair::SuiteResult& suite) {
  std::printf("suite %s\n", suite.suite.c_str());
  for (const auto& prop : suite.properties) {
    std::printf("  [%s] %-36s checked=%lld violations=%lld worst-margin=%.3e\n",
                prop.passed() ? "pass" : "FAIL", prop.name.c_str(),
                static_cast<long long>(prop.checked),
                static_cast<long long>(prop.violations), prop.worst_margin);
    if (!prop.passed() && !prop.witness.empty())
      std::printf("    witness state: %s\n", prop.witness.c_str());
  }
}

int run_verify(const std::string& which, std::int64_t samples,
               std::uint64_t seed, int threads) {
  std::vector<bellpair::SuiteResult> results;
  const bool all = which == "all";
  if (all || which == "bounds")
    results.push_back(
        bellpair::run_bounds_suite(seed, samples > 0 ? samples : 10000, threads));
  if (all || which == "filtering")
    results.push_back(
        bellpair::run_filtering_suite(seed, samples > 0 ? samples : 100, threads));
  if (all || which == "spectrum")
    results.push_back(
        bellpair::run_spectrum_suite(seed, samples > 0 ? samples : 500, threads));
  if (results.empty())
    throw bellpair::DomainError(
        "verify: unknown suite (use bounds, filtering, spectrum, all)");

  bool ok = true;
  std::int64_t checked = 0;
  for (const auto& suite : results) {
    print_suite(suite);
    ok = ok && suite.passed();
    for (const auto& prop : suite.properties) checked += prop.checked;
  }
  std::printf("%s: %lld checks across %zu suite(s)\n", ok ? "PASS" : "FAIL",
              static_cast<long long>(checked), results.size());
  return ok ? kExitOk : kExitPropertyViolation;
}

int run_normal_form(const std::string& path, double tol, int max_iter) {
  const bellpair::DensityMatrix rho =
      bellpair::state_from_string(read_input(path));
  nlohmann::json out;
  bool converged = false;
  try {
    const bellpair::NormalFormResult nf = bellpair::normal_form(rho, tol, max_iter);
    converged = nf.converged;
    out = {{"state", bellpair::state_to_json(nf.state)["rho"]},
           {"filter",
            {{"A", bellpair::mat2_to_json(nf.filter.A)},
             {"B", bellpair::mat2_to_json(nf.filter.B)}}},
           {"probability", nf.success_probability},
           {"iterations", nf.iterations},
           {"converged", nf.converged}};
  } catch (const bellpair::SingularMarginalError& e) {
    // No full-rank normal form; report the input as the best iterate.
    out = {{"state", bellpair::state_to_json(rho)["rho"]},
           {"filter",
            {{"A", bellpair::mat2_to_json(bellpair::Mat2c::identity())},
             {"B", bellpair::mat2_to_json(bellpair::Mat2c::identity())}}},
           {"probability", 1.0},
           {"iterations", 0},
           {"converged", false},
           {"error", e.what()}};
  }
  std::cout << out.dump(2) << "\n";
  return converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-qubit entanglement vs. CHSH violation toolkit "
      "(classical bound 1, Tsirelson bound sqrt(2))"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "Full report (measures, beta, optimal settings, normal form) "
                 "for a state JSON file ('-' reads stdin)");
  std::string analyze_path = "-";
  double analyze_tol = bellpair::kTol.convergence;
  int analyze_max_iter = 10000;
  analyze->add_option("input", analyze_path, "state JSON path or '-'");
  analyze->add_option("--tol", analyze_tol, "normal-form convergence tolerance");
  analyze->add_option("--max-iter", analyze_max_iter, "normal-form iteration cap");

  // family
  auto* family = app.add_subcommand(
      "family", "Emit a named family member as state JSON "
                "(pure, werner, mems, rank2, bell-diag)");
  std::string family_name;
  std::optional<double> family_c, family_p, family_a;
  std::vector<double> family_weights;
  family->add_option("name", family_name, "family name")->required();
  family->add_option("--c", family_c, "concurrence parameter");
  family->add_option("--p", family_p, "mixing weight");
  family->add_option("--a", family_a, "rank-2 asymmetry parameter");
  family->add_option("--weights", family_weights, "four Bell weights")
      ->expected(4);

  // region
  auto* region = app.add_subcommand(
      "region", "Sample (C, beta, purity, entropy) records as CSV");
  std::int64_t region_samples = 1000;
  std::uint64_t region_seed = bellpair::kDefaultSeed;
  std::string region_kind = "mixed-hs";
  std::string region_out = "-";
  int region_threads = 0;
  region->add_option("--samples", region_samples, "number of records")
      ->check(CLI::PositiveNumber);
  region->add_option("--seed", region_seed, "RNG seed");
  region->add_option("--kind", region_kind,
                     "mixed-hs | pure-haar | bell-diagonal | werner-line | "
                     "mems-line | pure-line");
  region->add_option("--out", region_out, "output path ('-' for stdout)");
  region->add_option("--threads", region_threads,
                     "worker threads (0 = auto, 1 = serial)");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Run the Monte Carlo property suites");
  std::string verify_suite = "all";
  std::int64_t verify_samples = 0;
  std::uint64_t verify_seed = bellpair::kDefaultSeed;
  int verify_threads = 0;
  verify->add_option("--suite", verify_suite, "bounds | filtering | spectrum | all");
  verify->add_option("--samples", verify_samples,
                     "samples per property (0 = suite default)");
  verify->add_option("--seed", verify_seed, "RNG seed");
  verify->add_option("--threads", verify_threads,
                     "worker threads (0 = auto, 1 = serial)");

  // normal-form
  auto* nform = app.add_subcommand(
      "normal-form", "Optimal-filter Bell-diagonal normal form of a state "
                     "JSON file ('-' reads stdin)");
  std::string nform_path = "-";
  double nform_tol = bellpair::kTol.convergence;
  int nform_max_iter = 10000;
  nform->add_option("input", nform_path, "state JSON path or '-'");
  nform->add_option("--tol", nform_tol, "marginal convergence tolerance");
  nform->add_option("--max-iter", nform_max_iter, "iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*analyze) return run_analyze(analyze_path, analyze_tol, analyze_max_iter);
    if (*family)
      return run_family(family_name, family_c, family_p, family_a, family_weights);
    if (*region)
      return run_region(region_samples, region_seed, region_kind, region_out,
                        region_threads);
    if (*verify)
      return run_verify(verify_suite, verify_samples, verify_seed, verify_threads);
    if (*nform) return run_normal_form(nform_path, nform_tol, nform_max_iter);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bellpair/errors.hpp"
#include "bellpair/families.hpp"
#include "bellpair/qstate.hpp"
#include "bellpair/state_json.hpp"

using namespace bellpair;
using nlohmann::json;

namespace {

struct CmdResult {
  int status = -1;
  std::string out;
};

// Runs a shell command, capturing stdout; stderr is discarded.
CmdResult run_cmd(const std::string& cmd) {
  CmdResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int rc = pclose(pipe);
  r.status = WEXITSTATUS(rc);
  return r;
}

const std::string kCli = std::string("\"") + CLI_PATH + "\"";

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_state_file(const std::filesystem::path& path,
                      const DensityMatrix& rho) {
  std::ofstream out(path);
  out << state_to_json(rho).dump();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("state JSON round trip is exact") {
  for (int i = 0; i < 50; ++i) {
    const auto rho = sample_state(Rng::derive_seed(91, i), StateKind::kMixedHs);
    const auto back = state_from_json(state_to_json(rho));
    CHECK(max_abs(back.mat() - rho.mat()) < 1e-13);
    // Text round trip: dump + parse preserves every double bit.
    const auto text_back = state_from_string(state_to_json(rho).dump());
    CHECK(max_abs(text_back.mat() - rho.mat()) < 1e-13);
  }
}

TEST_CASE("state JSON rejects malformed shapes") {
  CHECK_THROWS_AS(state_from_string("{"), ParseError);
  CHECK_THROWS_AS(state_from_string("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(state_from_string(R"({"rho": 3})"), ParseError);
  CHECK_THROWS_AS(state_from_string(R"({"rho": [[[1,0]]]})"), ParseError);

  json three_rows = state_to_json(werner(0.5));
  three_rows["rho"].erase(3);
  CHECK_THROWS_AS(state_from_json(three_rows), ParseError);

  json bad_entry = state_to_json(werner(0.5));
  bad_entry["rho"][0][0] = json::array({1.0});
  CHECK_THROWS_AS(state_from_json(bad_entry), ParseError);

  json text_entry = state_to_json(werner(0.5));
  text_entry["rho"][0][0] = json::array({"1", "0"});
  CHECK_THROWS_AS(state_from_json(text_entry), ParseError);

  // Shape fine, physics wrong: trace 2.
  json double_trace = state_to_json(werner(0.5));
  for (int i = 0; i < 4; ++i) {
    const double re = double_trace["rho"][i][i][0].get<double>();
    double_trace["rho"][i][i][0] = 2 * re;
    for (int j = 0; j < 4; ++j)
      if (j != i) {
        double_trace["rho"][i][j][0] = 2.0 * double_trace["rho"][i][j][0].get<double>();
        double_trace["rho"][i][j][1] = 2.0 * double_trace["rho"][i][j][1].get<double>();
      }
  }
  CHECK_THROWS_AS(state_from_json(double_trace), ValidationError);
}

TEST_CASE("region_csv format") {
  const auto records = region_sample(7, 10, RegionKind::kPureLine);
  const std::string csv = region_csv(records);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "kind,C,beta,purity,entropy");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string kind, c, beta, purity, entropy;
    REQUIRE(std::getline(fields, kind, ','));
    REQUIRE(std::getline(fields, c, ','));
    REQUIRE(std::getline(fields, beta, ','));
    REQUIRE(std::getline(fields, purity, ','));
    REQUIRE(std::getline(fields, entropy, ','));
    CHECK(kind == "pure-line");
    const double cv = std::stod(c);
    const double bv = std::stod(beta);
    CHECK(bv == doctest::Approx(std::sqrt(1 + cv * cv)).epsilon(1e-11));
    CHECK(std::stod(purity) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(rows == 10);
}

TEST_CASE("cli: family emits closed-form states") {
  const auto bell = run_cmd(kCli + " family pure --c 1");
  CHECK(bell.status == 0);
  const auto bell_state_parsed = state_from_string(bell.out);
  CHECK(max_abs(bell_state_parsed.mat() - pure_schmidt(1.0).mat()) < 1e-12);

  const auto mixed = run_cmd(kCli + " family werner --p 0");
  CHECK(mixed.status == 0);
  const auto mixed_parsed = state_from_string(mixed.out);
  CHECK(max_abs(mixed_parsed.mat() - 0.25 * Mat4c::identity()) < 1e-12);

  const auto bd = run_cmd(kCli + " family bell-diag --weights 0.7 0.15 0.1 0.05");
  CHECK(bd.status == 0);
  CHECK(max_abs(state_from_string(bd.out).mat() -
                bell_diagonal({0.7, 0.15, 0.1, 0.05}).mat()) < 1e-12);
}

TEST_CASE("cli: invalid family input exits 1 with no partial output") {
  const auto bad_domain = run_cmd(kCli + " family rank2 --c 0.6 --a 0.9");
  CHECK(bad_domain.status == 1);
  CHECK(bad_domain.out.empty());

  const auto bad_name = run_cmd(kCli + " family bogus --c 1");
  CHECK(bad_name.status == 1);
  CHECK(bad_name.out.empty());

  const auto missing = run_cmd(kCli + " family pure");
  CHECK(missing.status == 1);
  CHECK(missing.out.empty());
}

TEST_CASE("cli: analyze reports the pipeline values") {
  const auto bell_file = temp_file("bellpair_bell.json");
  write_state_file(bell_file, pure_schmidt(1.0));
  const auto bell = run_cmd(kCli + " analyze " + bell_file.string());
  CHECK(bell.status == 0);
  const json report = json::parse(bell.out);
  CHECK(report["concurrence"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report["beta"].get<double>() ==
        doctest::Approx(std::numbers::sqrt2).epsilon(1e-9));
  CHECK(report["bell_diagonal"].get<bool>());

  const auto werner_file = temp_file("bellpair_werner.json");
  write_state_file(werner_file, werner(0.9));
  const auto w = run_cmd(kCli + " analyze " + werner_file.string());
  CHECK(w.status == 0);
  const json wr = json::parse(w.out);
  CHECK(wr["concurrence"].get<double>() == doctest::Approx(0.85).epsilon(1e-8));
  CHECK(wr["beta"].get<double>() == doctest::Approx(1.27279).epsilon(1e-5));

  const auto mixed_file = temp_file("bellpair_mixed.json");
  write_state_file(mixed_file,
                   DensityMatrix::from_matrix(0.25 * Mat4c::identity()));
  const auto m = run_cmd(kCli + " analyze " + mixed_file.string());
  CHECK(m.status == 0);
  const json mr = json::parse(m.out);
  for (const char* key : {"concurrence", "eof", "negativity", "beta"})
    CHECK(mr[key].get<double>() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("cli: analyze rejects malformed input with exit 1, no output") {
  const auto garbage_file = temp_file("bellpair_garbage.json");
  std::ofstream(garbage_file) << "not json at all";
  const auto r = run_cmd(kCli + " analyze " + garbage_file.string());
  CHECK(r.status == 1);
  CHECK(r.out.empty());

  const auto missing = run_cmd(kCli + " analyze /nonexistent/state.json");
  CHECK(missing.status == 1);
  CHECK(missing.out.empty());
}

TEST_CASE("cli: normal-form of Bell-diagonal input is the identity filter") {
  const auto bd_file = temp_file("bellpair_bd.json");
  write_state_file(bd_file, bell_diagonal({0.55, 0.2, 0.15, 0.1}));
  const auto r = run_cmd(kCli + " normal-form " + bd_file.string());
  CHECK(r.status == 0);
  const json nf = json::parse(r.out);
  CHECK(nf["converged"].get<bool>());
  CHECK(nf["iterations"].get<int>() == 0);
  CHECK(nf["probability"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double want = i == j ? 1.0 : 0.0;
      CHECK(nf["filter"]["A"][i][j][0].get<double>() ==
            doctest::Approx(want).epsilon(1e-12));
      CHECK(nf["filter"]["A"][i][j][1].get<double>() ==
            doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("cli: quasi-distillable input exits 2 with the best iterate") {
  const auto piped = run_cmd(kCli + " family mems --c 0.5 | " + kCli +
                             " normal-form - --max-iter 500");
  CHECK(piped.status == 2);
  const json nf = json::parse(piped.out);
  CHECK_FALSE(nf["converged"].get<bool>());
  CHECK(nf["iterations"].get<int>() == 500);

  // analyze flags the same state and still emits the full report.
  const auto analyzed = run_cmd(kCli + " family mems --c 0.5 | " + kCli +
                                " analyze - --max-iter 500");
  CHECK(analyzed.status == 2);
  const json report = json::parse(analyzed.out);
  CHECK_FALSE(report["normal_form"]["converged"].get<bool>());
  CHECK(report["normal_form"]["beta"].get<double>() >
        report["beta"].get<double>());
}

TEST_CASE("cli: region determinism and error paths") {
  const auto out_a = temp_file("bellpair_region_a.csv");
  const auto out_b = temp_file("bellpair_region_b.csv");
  const std::string flags = " region --samples 300 --seed 7 --kind mixed-hs --out ";
  CHECK(run_cmd(kCli + flags + out_a.string()).status == 0);
  CHECK(run_cmd(kCli + flags + out_b.string()).status == 0);
  const std::string file_a = read_file(out_a);
  CHECK(!file_a.empty());
  CHECK(file_a == read_file(out_b));

  // Threaded rerun produces the identical file.
  const auto out_c = temp_file("bellpair_region_c.csv");
  CHECK(run_cmd(kCli + flags + out_c.string() + " --threads 3").status == 0);
  CHECK(file_a == read_file(out_c));

  const auto stdout_run = run_cmd(kCli + " region --samples 5 --kind pure-line");
  CHECK(stdout_run.status == 0);
  CHECK(stdout_run.out.rfind("kind,C,beta,purity,entropy\n", 0) == 0);

  CHECK(run_cmd(kCli + " region --samples 5 --kind bogus").status == 1);
  CHECK(run_cmd(kCli + " region --samples 5 --out /nonexistent/dir/x.csv").status ==
        1);
  CHECK(run_cmd(kCli + " region --samples 0").status == 1);
}

TEST_CASE("cli: verify runs clean on small samples") {
  const auto spectrum = run_cmd(kCli + " verify --suite spectrum --samples 20");
  CHECK(spectrum.status == 0);
  CHECK(spectrum.out.find("suite spectrum") != std::string::npos);
  CHECK(spectrum.out.find("FAIL") == std::string::npos);

  CHECK(run_cmd(kCli + " verify --suite bogus").status == 1);
}

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "bfnoise/norms.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct CommandResult {
  int exit_code;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(BFNOISE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (;;) {
    const std::size_t got = fread(buf, 1, sizeof(buf), pipe);
    if (got == 0) break;
    out.append(buf, got);
  }
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

TEST_CASE("analyze majority reports the figure-2 crossing structure") {
  const auto res =
      run_cli("analyze --function majority --n 3 --p 0.21 --symmetrized");
  REQUIRE(res.exit_code == 0);
  const Json doc = Json::parse(res.output);

  CHECK(doc["function"]["n"] == 3);
  CHECK(doc["function"]["truth_table_hex"] == "0xe8");
  CHECK(doc["function"]["balanced"] == true);
  CHECK(doc["expsum"]["sign_changes"] == 4);

  const auto& crossings = doc["zero_report"]["crossings"];
  REQUIRE(crossings.size() == 4);
  CHECK(crossings[0]["location"].get<double>() < 0.0);
  CHECK(std::abs(crossings[1]["location"].get<double>()) < 1e-6);
  CHECK(std::abs(crossings[2]["location"].get<double>() - 1.0) < 1e-6);
  CHECK(crossings[3]["location"].get<double>() > 2.0);
  for (const auto& c : crossings) {
    const double loc = c["location"].get<double>();
    CHECK_FALSE((loc > 1.0 + 1e-6 && loc < 2.0 - 1e-6));
  }

  for (const auto& v : doc["verdicts"]) CHECK(v["holds"] == true);
  CHECK(doc["mutual_information"].get<double>() <
        doc["information_bound"].get<double>());
}

TEST_CASE("analyze emits byte-stable JSON") {
  const auto res = run_cli("analyze --function majority --n 3 --p 0.21");
  REQUIRE(res.exit_code == 0);
  const Json doc = Json::parse(res.output);
  CHECK(doc.dump(2) + "\n" == res.output);
}

TEST_CASE("analyze dictatorship gives the empty sum and the entropy bound") {
  const auto res = run_cli("analyze --function dictatorship:2 --n 4 --p 0.3");
  REQUIRE(res.exit_code == 0);
  const Json doc = Json::parse(res.output);
  CHECK(doc["expsum"]["terms"].empty());
  CHECK(doc["expsum"]["sign_changes"] == 0);
  CHECK(doc["zero_report"]["crossings"].empty());
  // 1 - h(0.3), frozen with 40-digit arithmetic.
  CHECK(std::abs(doc["mutual_information"].get<double>() -
                 0.11870910076930738178) < 1e-12);
  for (const auto& sample : doc["curve"]["samples"]) {
    CHECK(std::abs(sample["g"].get<double>()) < 1e-9);
  }
}

TEST_CASE("analyze accepts raw truth tables") {
  const auto res = run_cli("analyze --truth-table 0110 --n 2 --p 0.25");
  REQUIRE(res.exit_code == 0);
  const Json doc = Json::parse(res.output);
  CHECK(doc["function"]["n"] == 2);
  // Frozen: the n=2 parity field is {0.375, 0.625}.
  CHECK(std::abs(doc["mutual_information"].get<double>() -
                 0.0455659970750350355) < 1e-12);
  for (const auto& v : doc["verdicts"]) CHECK(v["holds"] == true);
}

TEST_CASE("analyze csv output is plain alpha,g rows") {
  const auto res = run_cli(
      "analyze --function majority --n 3 --p 0.21 --format csv "
      "--alpha-min 0 --alpha-max 1 --alpha-step 0.25");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.substr(0, 8) == "alpha,g\n");
  CHECK(count_lines(res.output) == 6);  // header + 5 samples
  CHECK(res.output.find(',') != std::string::npos);
  CHECK(res.output.find(';') == std::string::npos);
}

TEST_CASE("invalid requests exit with code 2") {
  CHECK(run_cli("analyze --function majority --n 3 --p 0.6").exit_code == 2);
  CHECK(run_cli("analyze --function majority --n 2 --p 0.2").exit_code == 2);
  CHECK(run_cli("analyze --truth-table 011 --p 0.2").exit_code == 2);
  CHECK(run_cli("analyze --truth-table 0111 --p 0.2").exit_code == 2);
  CHECK(run_cli("analyze --function nonsense --n 3 --p 0.2").exit_code == 2);
  CHECK(run_cli("analyze --function majority --n 3").exit_code == 2);
  CHECK(run_cli("verify --n 9").exit_code == 2);
  CHECK(run_cli("verify --n 5").exit_code == 2);
  CHECK(run_cli("figure2 --p-list 0.7").exit_code == 2);
}

TEST_CASE("numeric range problems exit with code 1") {
  const auto res = run_cli("analyze --function majority --n 3 --p 1e-300");
  CHECK(res.exit_code == 1);
}

TEST_CASE("verify small dimensions end to end") {
  const auto res3 = run_cli("verify --n 3 --workers 2");
  REQUIRE(res3.exit_code == 0);
  const Json doc3 = Json::parse(res3.output);
  CHECK(doc3["functions_tested"] == 70);
  CHECK(doc3["all_hold"] == true);

  const auto res = run_cli("verify --n 2 --workers 2");
  REQUIRE(res.exit_code == 0);
  const Json doc = Json::parse(res.output);
  CHECK(doc["n"] == 2);
  CHECK(doc["functions_tested"] == 6);
  CHECK(doc["orbit_representatives"] == 2);
  CHECK(doc["all_hold"] == true);
  CHECK(doc["counterexamples"].empty());
  CHECK(doc.dump(2) + "\n" == res.output);

  const auto csv = run_cli("verify --n 2 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output ==
        "truth_table_hex,n,p,conjecture_id,witness_alpha,margin\n");
}

TEST_CASE("figure2 writes one CSV per p plus the multiset sidecar") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "bfnoise_cli_test_figure2";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string prefix = (dir / "fig").string();

  const auto res = run_cli("figure2 --out " + prefix);
  REQUIRE(res.exit_code == 0);

  for (const std::string tag : {"0.21", "0.068", "0.017"}) {
    const fs::path csv_path = prefix + "_p" + tag + ".csv";
    REQUIRE(fs::exists(csv_path));
    std::ifstream in(csv_path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "alpha,g_sym");
    std::string rest((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(count_lines(rest) == 401);  // alpha in [-1, 3] step 0.01
  }

  const fs::path sidecar = prefix + "_multiset_check.json";
  REQUIRE(fs::exists(sidecar));
  std::ifstream in(sidecar);
  const Json doc = Json::parse(in);
  REQUIRE(doc["multiset_check"].size() == 3);
  for (const auto& check : doc["multiset_check"]) {
    CHECK(check["pass"] == true);
    CHECK(check["max_abs_error"].get<double>() < 1e-12);
  }
  CHECK(doc["zero_reports"].size() == 3);
  fs::remove_all(dir);
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "schema_check.hpp"

using umbilic::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string schema_text() { return read_file(UMBILIC_SCHEMA_PATH); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("umbilic_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

struct SeedEnv {
  explicit SeedEnv(const char* value) { setenv("UMBILIC_SEED", value, 1); }
  ~SeedEnv() { unsetenv("UMBILIC_SEED"); }
};

}  // namespace

TEST_CASE("classify: exit codes and case tags") {
  auto r = invoke({"classify", "--unimodular", "1", "0", "-1"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["case"] == "unimodular.2.sol3");
  CHECK(j["group_label"] == "Sol3");

  r = invoke({"classify", "--nonunimodular", "0.5", "1"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["case"] == "nonunimodular.4");
  CHECK(j["surfaces"].empty());

  CHECK(invoke({"classify", "--unimodular", "1", "0"}).code == 2);
  CHECK(invoke({"classify"}).code == 2);
  CHECK(invoke({"classify", "--unimodular", "1", "0", "-1", "--nonunimodular", "1", "1"}).code == 2);
  CHECK(invoke({"classify", "--unimodular", "1", "nan", "0"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);

  r = invoke({"classify", "--nonunimodular", "2", "0", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "family,case,group_label,surfaces,lcf\nnon-unimodular,nonunimodular.3,R2 x_A R,4,false\n");
}

TEST_CASE("classify: JSON output validates against the shipped schema") {
  const std::string schema = schema_text();
  REQUIRE(!schema.empty());
  const std::vector<std::vector<std::string>> cases = {
      {"--unimodular", "1", "1", "1"},  {"--unimodular", "0", "0", "0"},   {"--unimodular", "1", "0", "-1"},
      {"--unimodular", "2", "1", "-1"}, {"--unimodular", "1", "1", "-1"},  {"--unimodular", "1", "1", "0"},
      {"--unimodular", "0", "0", "1"},  {"--unimodular", "1", "-1", "-1"}, {"--nonunimodular", "0", "1"},
      {"--nonunimodular", "1", "0"},    {"--nonunimodular", "1", "2"},     {"--nonunimodular", "2", "0"},
      {"--nonunimodular", "0.5", "1"},  {"--nonunimodular", "0.02", "0.106"}};
  for (const auto& c : cases) {
    std::vector<std::string> args{"classify"};
    args.insert(args.end(), c.begin(), c.end());
    const auto r = invoke(args);
    REQUIRE(r.code == 0);
    CAPTURE(r.out);
    CHECK(umbilic::cli::validate_against_schema(schema, r.out).empty());
    // Round trip: parse and re-serialize with the same layout.
    CHECK(nlohmann::ordered_json::parse(r.out).dump(2) + "\n" == r.out);
  }
}

TEST_CASE("schema validator rejects malformed reports") {
  const std::string schema = schema_text();
  auto j = nlohmann::ordered_json::parse(invoke({"classify", "--unimodular", "1", "0", "-1"}).out);
  CHECK(umbilic::cli::validate_against_schema(schema, j.dump()).empty());

  auto bad = j;
  bad.erase("lcf");
  CHECK(!umbilic::cli::validate_against_schema(schema, bad.dump()).empty());
  bad = j;
  bad["case"] = "unimodular.7";
  CHECK(!umbilic::cli::validate_against_schema(schema, bad.dump()).empty());
  bad = j;
  bad["surfaces"][0]["descriptor"]["normal"] = {1.0, 0.0};
  CHECK(!umbilic::cli::validate_against_schema(schema, bad.dump()).empty());
  bad = j;
  bad["evidence"]["nonexistence"] = "maybe";
  CHECK(!umbilic::cli::validate_against_schema(schema, bad.dump()).empty());
  CHECK(!umbilic::cli::validate_against_schema(schema, "{").empty());
}

TEST_CASE("construct: files, residual, exit codes") {
  const auto dir = scratch("construct");
  const auto csv = dir / "p.csv";
  auto r = invoke({"construct", "--profile", "a=2", "lambda=1", "--out", csv.string()});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(csv));
  CHECK(std::filesystem::exists(dir / "p.grid.csv"));
  const auto pos = r.out.find("residual ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 9)) < 1e-5);
  const std::string text = read_file(csv);
  CHECK(text.rfind("y,z,zprime,first_integral_drift\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);

  r = invoke({"construct", "--shooting", "c=-1", "--out", (dir / "sol3.csv").string()});
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir / "sol3.grid.csv"));

  CHECK(invoke({"construct", "--profile", "a=1", "lambda=1", "--out", csv.string()}).code == 2);
  CHECK(invoke({"construct", "--profile", "a=1", "lambda=1"}).code == 2);
  CHECK(invoke({"construct", "--profile", "a=2", "mu=1", "--out", csv.string()}).code == 2);
  CHECK(invoke({"construct", "--profile", "a=2", "lambda=x", "--out", csv.string()}).code == 2);
  CHECK(invoke({"construct", "--shooting", "c=2", "--out", csv.string()}).code == 2);
  CHECK(invoke({"construct", "--out", csv.string()}).code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify: default passes, corruption fails with the property named") {
  auto r = invoke({"verify", "--samples", "50"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = invoke({"verify", "--samples", "50", "--corrupt", "connection"});
  CHECK(r.code == 1);
  bool named = false;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);)
    if (line.rfind("connection ", 0) == 0) named = line.find("FAIL") != std::string::npos;
  CHECK(named);

  CHECK(invoke({"verify", "--corrupt", "nonsense"}).code == 2);
  CHECK(invoke({"verify", "--samples", "0"}).code == 2);
}

TEST_CASE("verify: deterministic, UMBILIC_SEED overrides --seed") {
  const auto a = invoke({"verify", "--seed", "7", "--samples", "40", "--format", "csv"});
  const auto b = invoke({"verify", "--seed", "7", "--samples", "40", "--format", "csv"});
  CHECK(a.out == b.out);
  const auto other = invoke({"verify", "--seed", "8", "--samples", "40", "--format", "csv"});
  CHECK(other.out != a.out);
  {
    SeedEnv env("7");
    CHECK(invoke({"verify", "--seed", "8", "--samples", "40", "--format", "csv"}).out == a.out);
  }
  {
    SeedEnv env("not-a-number");
    CHECK(invoke({"verify", "--samples", "40"}).code == 2);
  }
}

TEST_CASE("report: JSON plus profile CSVs") {
  const auto dir = scratch("report");
  auto r = invoke({"report", "--nonunimodular", "2", "0", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(umbilic::cli::validate_against_schema(schema_text(), read_file(dir / "report.json")).empty());
  CHECK(std::filesystem::exists(dir / "profile_x.csv"));
  CHECK(std::filesystem::exists(dir / "profile_y.csv"));

  r = invoke({"report", "--unimodular", "1", "0", "-1", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(dir / "profile_sol3.csv"));
  std::filesystem::remove_all(dir);
}

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "cli.hpp"

using namespace pseudospec;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pseudospec");
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("pseudospec_test_" + name)).string();
}

}  // namespace

TEST_CASE("derive reports the worked example") {
  const Run r = run({"derive", "--model", "rm1", "--alpha", "1/4", "--beta", "1/2", "--A1", "3/2",
                     "--B1", "1/8"});
  CHECK(r.code == cli::exit_ok);
  CHECK(r.out.find("-1/12") != std::string::npos);
  CHECK(r.out.find("-17.944444444444443") != std::string::npos);

  const Run j = run({"derive", "--format", "json"});
  REQUIRE(j.code == 0);
  const json d = json::parse(j.out);
  CHECK(d["schema"] == cli::kSchema);
  CHECK(d["derived"]["A"] == 4.0);
  CHECK(d["derived"]["sigma"] == 12.0);
  CHECK(d["admissible"] == true);
}

TEST_CASE("harmonic derive") {
  const Run r = run({"derive", "--model", "harmonic", "--alpha", "0", "--beta", "0", "--format",
                     "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["derived"]["scale"] == 1.0);
}

TEST_CASE("constraint failures exit with code 3 and name the constraint") {
  const Run r = run({"spectrum", "--alpha", "0.5", "--beta", "0.25"});
  CHECK(r.code == cli::exit_constraints);
  CHECK(r.err.find("alpha < beta") != std::string::npos);
  const Run b = run({"derive", "--model", "rm2", "--A2", "1", "--B2", "2"});
  CHECK(b.code == cli::exit_constraints);
}

TEST_CASE("parse errors exit with code 2") {
  CHECK(run({"derive", "--alpha", "x"}).code == cli::exit_parse);
  CHECK(run({"derive", "--model", "rm3"}).code == cli::exit_parse);
  CHECK(run({"frobnicate"}).code == cli::exit_parse);
  CHECK(run({}).code == cli::exit_parse);
  CHECK(run({"derive", "--config", temp_path("missing.json")}).code == cli::exit_parse);
  const std::string bad = temp_path("bad.json");
  std::ofstream(bad) << R"({"alpha": 0.25, "gamma": 1})";
  CHECK(run({"derive", "--config", bad}).code == cli::exit_parse);
}

TEST_CASE("config file values are overridden by flags") {
  const std::string path = temp_path("config.json");
  std::ofstream(path) << R"({"model": "rm2", "alpha": "1/4", "beta": 0.5, "A2": 1.5, "B2": 0.25,
                            "levels": 2, "L": 14, "n": 500})";
  const Run base = run({"derive", "--config", path, "--format", "json"});
  REQUIRE(base.code == 0);
  const json b = json::parse(base.out);
  CHECK(b["config"]["model"] == "rm2");
  CHECK(b["derived"]["chi"] == doctest::Approx(24.0));
  const Run over = run({"derive", "--config", path, "--B2", "0", "--format", "json"});
  REQUIRE(over.code == 0);
  const json o = json::parse(over.out);
  CHECK(o["config"]["B2"] == 0.0);
  CHECK(o["config"]["levels"] == 2);
  CHECK(o["derived"]["b"] == 0.0);
}

TEST_CASE("spectrum CSV") {
  const Run r = run({"spectrum", "--levels", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# schema: pseudospec/1", 0) == 0);
  CHECK(r.out.find("# config: ") != std::string::npos);
  CHECK(r.out.find("# constraints: ") != std::string::npos);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][0] == "n");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][4]) <= 1e-3);
    CHECK(rows[i][6] == "true");
  }
  // 17 significant digits.
  CHECK(rows[1][1] == "-2.0069444444444429");
}

TEST_CASE("rm2 spectrum marks the marginal level") {
  const Run r = run({"spectrum", "--model", "rm2", "-L", "14", "--levels", "8"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[4][0] == "3");
  CHECK(rows[4][7] == "true");
  CHECK(rows[3][7] == "false");
}

TEST_CASE("PT spectra start at zero") {
  for (const char* model : {"rm1-pt", "rm2-pt"}) {
    const Run r = run({"spectrum", "--model", model, "--levels", "2", "-L", "14"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    CHECK(std::stod(rows[1][2]) == 0.0);
    CHECK(std::abs(std::stod(rows[1][3])) <= 1e-4);
  }
}

TEST_CASE("verify passes on default grids and fails on coarse ones") {
  const Run ok = run({"verify", "--levels", "3", "--format", "json"});
  CHECK(ok.code == cli::exit_ok);
  const json j = json::parse(ok.out);
  CHECK(j["passed"] == true);
  CHECK(j["schema"] == cli::kSchema);
  CHECK(j["levels"].size() == 3);

  const Run bad = run({"verify", "-N", "50", "--levels", "3"});
  CHECK(bad.code == cli::exit_verification);

  const Run herm = run({"verify", "--model", "harmonic", "--alpha", "0", "--beta", "0",
                        "--levels", "2"});
  CHECK(herm.code == cli::exit_ok);
  CHECK(json::parse(herm.out)["hermitian_limit"] == true);
}

TEST_CASE("tolerance flags reach the report") {
  const Run r = run({"verify", "--levels", "2", "--tol-spectrum", "1e-9"});
  CHECK(r.code == cli::exit_verification);
  CHECK(json::parse(r.out)["config"]["tolerances"]["spectrum"] == 1e-9);
}

TEST_CASE("table audit") {
  const Run r = run({"table-audit"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# mismatches: 5") != std::string::npos);
  const Run j = run({"table-audit", "--format", "json"});
  CHECK(json::parse(j.out)["schema"] == cli::kSchema);
}

TEST_CASE("output files and plots") {
  const std::string out = temp_path("spectrum.json");
  const std::string svg = temp_path("levels.svg");
  std::filesystem::remove(out);
  std::filesystem::remove(svg);
  const Run r = run({"spectrum", "--levels", "2", "-o", out, "--plot", svg});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  const json j = json::parse(f);
  CHECK(j["schema"] == cli::kSchema);
  std::ifstream p(svg);
  const std::string text((std::istreambuf_iterator<char>(p)), std::istreambuf_iterator<char>());
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
}

TEST_CASE("scan is deterministic and independent of the thread count") {
  const std::vector<std::string> args = {"scan", "--resolution", "9", "--alpha-min", "0",
                                         "--alpha-max", "0.6", "--beta-min", "0", "--beta-max",
                                         "0.6"};
  setenv("PSEUDOSPEC_THREADS", "1", 1);
  CHECK(cli::worker_count() == 1);
  const Run one = run(args);
  setenv("PSEUDOSPEC_THREADS", "4", 1);
  CHECK(cli::worker_count() == 4);
  const Run four = run(args);
  unsetenv("PSEUDOSPEC_THREADS");
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(run(args).out == one.out);
}

TEST_CASE("scan admissibility swaps under alpha <-> beta with the ordering flag flipped") {
  for (const char* model : {"rm1", "rm2"}) {
    const Run r = run({"scan", "--model", model, "--resolution", "11", "--alpha-min", "0",
                       "--alpha-max", "0.5", "--beta-min", "0", "--beta-max", "0.5"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    std::map<std::pair<int, int>, unsigned> mask;
    for (std::size_t k = 1; k < rows.size(); ++k) {
      mask[{std::stoi(rows[k][0]), std::stoi(rows[k][1])}] = std::stoul(rows[k][4]);
    }
    REQUIRE(mask.size() == 121);
    const unsigned order_bit = 1u << 2;
    for (const auto& [ij, m] : mask) {
      const unsigned swapped = mask.at({ij.second, ij.first});
      if (ij.first == ij.second) {
        CHECK((m & order_bit) == 0);
      } else {
        CHECK((m ^ order_bit) == swapped);
      }
    }
  }
}

TEST_CASE("rationalize") {
  CHECK(cli::rationalize(0.25) == Rational(1, 4));
  CHECK(cli::rationalize(-1.0 / 12.0) == Rational(-1, 12));
  CHECK(cli::rationalize(-323.0 / 18.0) == Rational(-323, 18));
  CHECK_FALSE(cli::rationalize(std::sqrt(2.0)));
}

TEST_CASE("number parsing") {
  CHECK(cli::parse_number("3/4") == 0.75);
  CHECK(cli::parse_number("-0.5") == -0.5);
  CHECK(cli::parse_number("1e-3") == 1e-3);
  CHECK_FALSE(cli::parse_number("1/0"));
  CHECK_FALSE(cli::parse_number("abc"));
}

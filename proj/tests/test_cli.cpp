#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "diracosc/cli.hpp"
#include "diracosc/fock.hpp"
#include "diracosc/sparse_io.hpp"

using namespace diracosc;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "diracosc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::vector<std::string>* header = nullptr) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      if (header) *header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    // the 3D spectrum prints the sign of n as + or -
    for (const auto& c : cells) row.push_back(c == "+" ? 1.0 : c == "-" ? -1.0 : std::stod(c));
    rows.push_back(row);
  }
  return rows;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("diracosc_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("spectrum in one dimension") {
  const auto r = run_cli({"spectrum", "--n-max", "2"});
  REQUIRE(r.code == 0);
  std::vector<std::string> h;
  const auto rows = parse_csv(r.out, &h);
  CHECK(h == std::vector<std::string>{"n", "E"});
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == -2);
  CHECK(rows[0][1] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-15));
  CHECK(rows[2][1] == 1.0);
}

TEST_CASE("spectrum in three dimensions") {
  const auto r = run_cli({"spectrum", "--dim", "3", "--n-max", "1", "--kappa-max", "1"});
  REQUIRE(r.code == 0);
  std::vector<std::string> h;
  const auto rows = parse_csv(r.out, &h);
  CHECK(h == std::vector<std::string>{"n_sign", "n_abs", "kappa", "g", "E"});
  CHECK(!rows.empty());
  const auto empty = run_cli({"spectrum", "--dim", "3", "--kappa-max", "0"});
  CHECK(empty.code == 0);
  CHECK(parse_csv(empty.out).empty());
}

TEST_CASE("wavefn is normalised on its default grid") {
  const auto r = run_cli({"wavefn", "--n", "-3", "--mass", "1.4", "--omega", "0.6"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 241);
  double total = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto dens = [&](const std::vector<double>& row) {
      double d = 0.0;
      for (int k = 1; k <= 8; ++k) d += row[k] * row[k];
      return d;
    };
    total += 0.5 * (rows[i][0] - rows[i - 1][0]) * (dens(rows[i]) + dens(rows[i - 1]));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("wavefn in three dimensions starts at the origin") {
  const auto r = run_cli({"wavefn", "--dim", "3", "--n", "1", "--kappa", "-1", "--g", "0.5"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() > 2);
  CHECK(rows[0][0] == 0.0);
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(rows[0][k] - rows[1][k]) < 0.1);
  CHECK(run_cli({"wavefn", "--dim", "3", "--n", "0", "--kappa", "1", "--g", "1"}).code == 2);
  CHECK(run_cli({"wavefn", "--dim", "3", "--n", "-0", "--kappa", "-1"}).code == 0);
}

TEST_CASE("check exit codes") {
  CHECK(run_cli({"check", "--suite", "fock"}).code == 0);
  const auto fail = run_cli({"check", "--suite", "propagator", "--tolerance", "0"});
  CHECK(fail.code == 1);
  CHECK(fail.err.find("check failed") != std::string::npos);
  CHECK(run_cli({"check", "--suite", "nonsense"}).code == 2);
  CHECK(run_cli({"check", "--tolerance", "-1"}).code == 2);
  CHECK(run_cli({"spectrum", "--omega", "0"}).code == 2);
  CHECK(run_cli({"spectrum", "--mass", "-1"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"spectrum", "--bogus", "1"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("check report formats") {
  const auto j = run_cli({"check", "--suite", "fock"});
  REQUIRE(j.code == 0);
  const auto report = nlohmann::json::parse(j.out);
  CHECK(report.contains("checks"));
  CHECK(report["pass"] == true);
  const auto c = run_cli({"check", "--suite", "fock", "--format", "csv"});
  CHECK(c.out.rfind("name,measured,tolerance,pass\n", 0) == 0);
}

TEST_CASE("momentum propagator grid hitting a pole") {
  const auto r = run_cli({"propagator", "--space", "momentum", "--grid", "0,2,21", "--n-max", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("n=0") != std::string::npos);
  const auto ok = run_cli({"propagator", "--space", "momentum", "--n-max", "3"});
  CHECK(ok.code == 0);
  CHECK(parse_csv(ok.out).size() == 60);
}

TEST_CASE("propagator single point and mixed space") {
  const auto r = run_cli({"propagator", "--n-max", "0", "--grid", "0.5,0.5,1", "--t", "0.2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].size() == 4 + 32);
  // at N = 0 only S00 is nonzero: psi_0(z) psi_0(0) e^{-i m t}
  const double mag = std::hypot(rows[0][4], rows[0][5]);
  CHECK(mag == doctest::Approx(std::exp(-0.125) / std::sqrt(std::acos(-1.0))).epsilon(1e-14));
  const auto m = run_cli({"propagator", "--space", "mixed", "--t", "0.3", "--grid", "-1,1,5"});
  CHECK(m.code == 0);
  CHECK(parse_csv(m.out).size() == 5);
}

TEST_CASE("fock export reimports with canonical anticommutators") {
  const auto r = run_cli({"fock", "--fock-modes", "4"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  const auto imp = fock::read_operators(is);
  REQUIRE(imp.mode_lines.size() == 4);
  std::map<std::string, fock::FockOperator> ops;
  for (const auto& n : imp.operators) ops[n.name] = n.op;
  REQUIRE(ops.size() == 3 + 8);
  fock::FockOperator id(16, 16);
  id.setIdentity();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto& x = ops["b_" + std::to_string(a)];
      const auto& yd = ops["bdag_" + std::to_string(b)];
      const fock::FockOperator ac = x * yd + yd * x;
      CHECK(fock::max_abs_diff(ac, a == b ? id : fock::FockOperator(16, 16)) == 0.0);
    }

  const auto j = run_cli({"fock", "--dim", "3", "--fock-modes", "3", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["modes"].size() == 3);
  CHECK(run_cli({"fock", "--fock-modes", "15"}).code == 2);
}

TEST_CASE("config file overrides flags") {
  const std::string path = temp_path("config.json");
  {
    std::ofstream f(path);
    f << R"({"n_max": 1, "omega": 2.0})";
  }
  const auto r = run_cli({"spectrum", "--n-max", "5", "--config", path});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2][1] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  {
    std::ofstream f(path);
    f << R"({"no_such_key": 1})";
  }
  CHECK(run_cli({"spectrum", "--config", path}).code == 2);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK(run_cli({"spectrum", "--config", path}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("output is deterministic and --out matches stdout") {
  const std::string path = temp_path("out.csv");
  const auto a = run_cli({"propagator", "--n-max", "6", "--t", "0.4"});
  const auto b = run_cli({"propagator", "--n-max", "6", "--t", "0.4", "--out", path});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(b.out.empty());
  CHECK(slurp(path) == a.out);
  CHECK(run_cli({"propagator", "--n-max", "6", "--t", "0.4"}).out == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("installed binary runs") {
  const std::string cmd = std::string("\"") + DIRACOSC_CLI_PATH + "\" spectrum --n-max 1 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
}

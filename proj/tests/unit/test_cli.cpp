#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace holozero;
using json = nlohmann::ordered_json;
using cplx = std::complex<double>;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("demos lists the built-ins") {
  const Run r = run({"demos"});
  CHECK(r.code == 0);
  for (const char* name : {"grid100", "quasirandom100", "annular", "sheets", "circulant-det",
                           "circulant-resolvent", "funcchoice"}) {
    CHECK(r.out.find(name) != std::string::npos);
  }
}

TEST_CASE("count") {
  Run r = run({"count", "--expr", "z^3", "--rect=-1,1,-1,1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 3);

  r = run({"count", "--demo", "grid100", "--rect", "-1,1,-1,1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 100);

  r = run({"count", "--expr", "z", "--dexpr", "1", "--rect", "0,1,0,1"});
  CHECK(r.code == 2);
  const json doc = json::parse(r.out);
  CHECK(doc["status"] == "quadrature_failure");
  CHECK(doc.contains("edge"));

  r = run({"count", "--expr", "z", "--rect", "0,1,0,1"});
  CHECK(r.code == 2);
}

TEST_CASE("count of a non-holomorphic function exits 3") {
  const Run r = run({"count", "--expr", "z^2-0.25", "--dexpr", "z", "--rect", "0,1,-1,1"});
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["status"] == "non_integer");
}

TEST_CASE("usage errors exit 64") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"count"}).code == 64);
  CHECK(run({"count", "--expr", "z"}).code == 64);
  CHECK(run({"count", "--expr", "z+", "--rect", "0,1,0,1"}).code == 64);
  CHECK(run({"count", "--expr", "z", "--rect", "0,1,0"}).code == 64);
  CHECK(run({"count", "--expr", "z", "--rect", "1,0,0,1"}).code == 64);
  CHECK(run({"count", "--expr", "z", "--demo", "grid100"}).code == 64);
  CHECK(run({"find", "--demo", "nope"}).code == 64);
  CHECK(run({"find", "--demo", "funcchoice", "--format", "xml"}).code == 64);
  CHECK(run({"count", "--bogus"}).code == 64);
}

TEST_CASE("help exits 0") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("find two explicit factors") {
  const Run r = run({"find", "--expr", "(z-0.25-0.25i)*(z-0.75-0.75i)", "--rect", "0,1,0,1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["status"] == "ok");
  CHECK(doc["count"] == 2);
  REQUIRE(doc["zeros"].size() == 2);
  const cplx a{doc["zeros"][0]["re"].get<double>(), doc["zeros"][0]["im"].get<double>()};
  const cplx b{doc["zeros"][1]["re"].get<double>(), doc["zeros"][1]["im"].get<double>()};
  CHECK(std::abs(a - cplx(0.25, 0.25)) < 1e-12);
  CHECK(std::abs(b - cplx(0.75, 0.75)) < 1e-12);
  CHECK(doc["problem"]["derivative_free"] == true);
}

TEST_CASE("find with an explicit derivative") {
  const Run r = run({"find", "--expr", "(z-0.5-0.5i)^2*exp(z)", "--dexpr",
                     "(z-0.5-0.5i)*exp(z)*(z-0.5-0.5i+2)", "--rect", "0,1,0,1", "--polish"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["zeros"].size() == 1);
  CHECK(doc["zeros"][0]["multiplicity"] == 2);
  CHECK(doc["problem"]["derivative_free"] == false);
  CHECK(doc["config"]["polish"] == true);
}

TEST_CASE("json round trip, fixed key order, determinism") {
  const std::vector<std::string> args{"find", "--demo", "funcchoice", "--alpha", "3", "--a", "0.4,0.45", "--seed", "5"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc.dump(2) + "\n" == a.out);
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"status", "problem", "mode", "count", "argument_principle_count",
                                         "zeros", "regions", "eval_counts", "perturbations", "config"});
  CHECK(doc["count"] == 3);
  CHECK(doc["zeros"][0]["multiplicity"] == 3);
  CHECK_FALSE(doc.contains("timing"));
  CHECK(json::parse(run({"find", "--demo", "funcchoice", "--timing"}).out).contains("timing"));
}

TEST_CASE("csv, out and plot-data files") {
  const auto dir = std::filesystem::temp_directory_path() / "holozero_cli_test";
  std::filesystem::create_directories(dir);
  const auto out = dir / "zeros.csv";
  const auto plot = dir / "plot.json";
  const Run r = run({"find", "--demo", "funcchoice", "--format", "csv", "--out", out.string(), "--plot-data",
                     plot.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const std::string csv = read_file(out);
  CHECK(csv.rfind("re,im,multiplicity,residue_re,residue_im,refined,kind,label\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  const json p = json::parse(read_file(plot));
  CHECK(p["zeros"].size() == 1);
  CHECK(p["regions"].size() >= 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("engine failure keeps a document") {
  const Run r = run({"find", "--expr", "z", "--dexpr", "1", "--rect", "0,1,0,1"});
  CHECK(r.code == 2);
  const json doc = json::parse(r.out);
  CHECK(doc["status"] == "failed");
  CHECK(doc.contains("error"));
}

TEST_CASE("pole mode via --depth") {
  const Run r = run({"find", "--expr", "1/(z-0.3-0.3i)", "--dexpr", "-1/(z-0.3-0.3i)^2", "--rect", "0,1,0,1",
                     "--depth", "0"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["mode"] == "poles-manual");
  REQUIRE(doc["zeros"].size() == 1);
  CHECK(doc["zeros"][0]["kind"] == "pole");
}

TEST_CASE("benchmark") {
  Run r = run({"benchmark", "--n", "0", "--tolerances", "1e-8"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("method,n,tolerance,eval_count,max_zero_error\n", 0) == 0);
  const auto rows = cli::run_benchmark(0, {1e-8});
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) CHECK(row.max_zero_error < 1e-8);

  const auto three = cli::run_benchmark(3, {1e-10});
  REQUIRE(three.size() == 2);
  CHECK(three[0].method == "aaa");
  CHECK(three[0].max_zero_error <= 1e-8);
  CHECK(three[0].evaluations < three[1].evaluations);
  CHECK(run({"benchmark", "--tolerances", "x"}).code == 64);
}

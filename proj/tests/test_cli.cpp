#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blochgeo/export.hpp"
#include "cli.hpp"

using nlohmann::json;
namespace cli = blochgeo::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "blochgeo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"--version"}).code == cli::kOk);
  CHECK(run({"distance", "--metric", "hamming", "--a", "0.5,0", "--b", "0.5,1"}).code == cli::kUsageError);
  CHECK(run({"distance", "--a", "0.5,0"}).code == cli::kUsageError);
  CHECK(run({"ranking"}).code == cli::kUsageError);
  CHECK(run({"geodesic", "--ra", "0.5"}).code == cli::kUsageError);
}

TEST_CASE("domain errors map to usage errors") {
  const auto r = run({"distance", "--metric", "sjoqvist", "--a", "0,0", "--b", "0.5,1"});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("maximally mixed") != std::string::npos);
  CHECK(run({"distance", "--a", "1.5,0", "--b", "0.5,1"}).code == cli::kUsageError);
}

TEST_CASE("distance example values") {
  const auto r = run({"distance", "--metric", "all", "--a", "0.5,0", "--b", "0.5,3.141592653589793"});
  REQUIRE(r.code == cli::kOk);
  const auto d = r.doc()["distances"];
  REQUIRE(d.size() == 4);
  std::map<std::string, double> by_metric;
  for (const auto& item : d) by_metric[item["metric"]] = item["value"];
  CHECK(by_metric["bures"] == doctest::Approx(0.51764).epsilon(1e-4));
  CHECK(by_metric["sjoqvist"] == doctest::Approx(std::numbers::pi / 2));
  CHECK(by_metric["euclid"] == doctest::Approx(1.0));
  CHECK(by_metric["taxicab"] == doctest::Approx(1.0));
}

TEST_CASE("Cartesian input is reduced and agrees with the general formula") {
  const auto r = run({"distance", "--metric", "bures", "--a3", "0.1,0.2,0.3", "--b3", "-0.4,0.1,0.5"});
  REQUIRE(r.code == cli::kOk);
  const auto d = r.doc()["distances"][0];
  CHECK(std::abs(d["value"].get<double>() - d["general_value"].get<double>()) < 1e-8);
  CHECK(r.doc()["reduction"]["p1_new"][1].get<double>() == 0.0);
}

TEST_CASE("angle conventions differ only beyond pi") {
  const std::vector<std::string> base{"distance", "--metric", "sjoqvist", "--a", "0.5,0", "--b", "0.5,5"};
  auto wrap = base;
  wrap.push_back("--wrap-angles");
  const auto given = run(base).doc();
  const auto wrapped = run(wrap).doc();
  CHECK(given["angle_convention"] == "as-given");
  CHECK(given["distances"][0]["value"].get<double>() == doctest::Approx(2.5));
  CHECK(wrapped["distances"][0]["value"].get<double>() == doctest::Approx(0.5 * (2 * std::numbers::pi - 5)));
}

TEST_CASE("geodesic verification and exit codes") {
  auto ok = run({"geodesic", "--ra", "0.5", "--ra-prime", "0.3", "--theta", "0:1", "-n", "50", "--verify"});
  CHECK(ok.code == cli::kOk);
  auto breach = run({"geodesic", "--metric", "bures", "--ra", "0.5", "--ra-prime", "0.3", "--theta", "0:1",
                     "-n", "50", "--verify", "--tol", "0", "--oracle-steps", "10"});
  CHECK(breach.code == cli::kToleranceBreach);
  // This curve reaches the origin, where the radial chart ends.
  auto left = run({"geodesic", "--metric", "sjoqvist", "--ra", "0.2", "--ra-prime", "-1", "--theta", "0:2",
                   "-n", "50", "--verify", "--tol", "1"});
  CHECK(left.code == cli::kVerificationFailure);
}

TEST_CASE("geodesic file output round-trips") {
  const std::string path = "test_cli_geodesic.csv";
  auto r = run({"geodesic", "--ra", "0.5", "--ra-prime", "0", "-n", "20", "--out", path});
  REQUIRE(r.code == cli::kOk);
  std::ifstream is(path);
  const auto rec = blochgeo::read_csv(is);
  CHECK(rec.rows.size() == 21);
  CHECK(rec.columns.front() == "theta");
  std::remove(path.c_str());
}

TEST_CASE("contour and fig2") {
  auto c = run({"contour", "--field", "ratio", "--nr", "100", "--ntheta", "100"});
  REQUIRE(c.code == cli::kOk);
  CHECK(c.doc()["area_fraction"].get<double>() > 0.5);
  CHECK(run({"contour", "--field", "ratio", "--nr", "10"}).code == cli::kUsageError);
  auto f = run({"fig2", "--samples", "37"});
  CHECK(f.code == cli::kOk);
  CHECK(f.doc()["ordering_failures"] == 0);
}

TEST_CASE("ranking is reproducible from its seed") {
  const std::vector<std::string> args{"ranking", "--seed", "9", "--trials", "5000"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(a.doc()["seed"] == 9);
  CHECK(a.doc()["violations"].get<int>() > 0);
}

TEST_CASE("verify suites pass and record their seed") {
  const auto r = run({"verify", "--suite", "rotations", "--trials", "200"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.doc()["seed"] == 42);
  CHECK(r.doc()["passed"] == true);
  CHECK(run({"verify", "--suite", "nothing"}).code == cli::kUsageError);
}

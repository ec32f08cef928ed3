#include "doctest.h"

#include "cli.hpp"
#include "json.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "bpart");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = bpart::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json rows(const Result& r) { return nlohmann::json::parse(r.out).at("rows"); }

}  // namespace

TEST_CASE("count") {
  auto r = run({"count", "--alpha", "sqrt:2", "--kind", "q", "--n", "100"});
  REQUIRE(r.code == 0);
  CHECK(rows(r)[0]["count"] == "28870");

  r = run({"count", "--alpha", "sqrt:2", "--kind", "p", "--ns", "0,100,800"});
  REQUIRE(r.code == 0);
  const auto j = rows(r);
  CHECK(j[0]["count"] == "1");
  CHECK(j[1]["count"] == "8892735");
  // Round trip keeps every digit.
  CHECK(j[2]["count"].get<std::string>() == "219091729965354807601257");

  r = run({"count", "--alpha", "sqrt:2", "--kind", "q", "--ns", "50,100", "--format", "csv"});
  CHECK(r.out == "n,count\n50,552\n100,28870\n");
}

TEST_CASE("table") {
  auto r = run({"table", "--alpha", "sqrt:2", "--kind", "q", "--ns", "50,400"});
  REQUIRE(r.code == 0);
  auto j = rows(r);
  CHECK(j[0]["exact"] == "552");
  CHECK(j[0]["estimate"].get<double>() == doctest::Approx(2568.04));
  CHECK(j[0]["ratio"].get<double>() == doctest::Approx(4.65225));
  CHECK(j[1]["exact"] == "43472367216");
  CHECK(j[1]["estimate"].get<double>() == doctest::Approx(1.97845e11));
  CHECK(j[1]["ratio"].get<double>() == doctest::Approx(4.55105));

  r = run({"table", "--alpha", "sqrt:2", "--kind", "p", "--ns", "50", "--N", "10000",
           "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,exact,estimate,ratio,theorem_estimate,theorem_ratio\n50,28086,167998,5.98154,", 0) == 0);

  // Without a quotient bound the p theorem column is empty, not an error.
  r = run({"table", "--alpha", "e", "--kind", "p", "--ns", "30"});
  REQUIRE(r.code == 0);
  CHECK(rows(r)[0]["theorem_estimate"].is_null());
}

TEST_CASE("lambda") {
  auto r = run({"lambda", "--alpha", "sqrt:2", "--N", "1000000"});
  REQUIRE(r.code == 0);
  const auto j = rows(r)[0];
  CHECK(j["A"] == 2);
  CHECK(j["conditional"] == false);
  CHECK(j["lambda_lo"].get<double>() > 5.7731);
  CHECK(j["lambda_hi"].get<double>() < 5.7739);
  CHECK(j["log_pi"].get<double>() == doctest::Approx(-0.127496));

  r = run({"lambda", "--alpha", "e", "--N", "1000"});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["error_kind"] == "MissingBoundError");
  r = run({"lambda", "--alpha", "e", "--N", "1000", "--quotient-bound", "50"});
  REQUIRE(r.code == 0);
  CHECK(rows(r)[0]["conditional"] == true);
}

TEST_CASE("saddle and decomposition") {
  auto r = run({"saddle", "--alpha", "sqrt:2", "--kind", "q", "--n", "100"});
  REQUIRE(r.code == 0);
  auto j = rows(r)[0];
  CHECK(j["equation"] == "Q");
  CHECK(j["t_star"].get<double>() > 0);
  CHECK(j["bracket_lo"].get<double>() < j["t_star"].get<double>());

  r = run({"check-decomposition", "--alpha", "sqrt:2", "--t", "0.1"});
  REQUIRE(r.code == 0);
  j = rows(r)[0];
  CHECK(j["residual"].get<double>() < 1e-7);
  for (const char* k : {"L", "L1", "D", "R", "E", "L_tail", "E_tail"}) CHECK(j.contains(k));
}

TEST_CASE("sums") {
  auto r = run({"sums", "--alpha", "sqrt:2", "--x", "1000000", "--what", "S"});
  REQUIRE(r.code == 0);
  const auto j = rows(r)[0];
  CHECK(std::abs(j["S"].get<double>()) <= 41.45);
  CHECK(j["ostrowski_bound"].get<double>() == doctest::Approx(41.4465));

  r = run({"sums", "--alpha", "pi", "--xs", "10,100"});
  REQUIRE(r.code == 0);
  CHECK(rows(r)[0]["ostrowski_bound"].is_null());

  r = run({"sums", "--alpha", "sqrt:2", "--what", "J", "--x", "2"});
  REQUIRE(r.code == 0);
  CHECK(rows(r)[0]["J"].get<double>() == doctest::Approx(0.0784271));
}

TEST_CASE("errors and exit codes") {
  auto r = run({"count", "--alpha", "sqrt:4", "--n", "3"});
  CHECK(r.code == 1);
  auto e = nlohmann::json::parse(r.err);
  CHECK(e["error_kind"] == "RationalityError");
  CHECK(e["module"] == "alpha");
  CHECK(e.contains("message"));
  CHECK(r.out.empty());

  r = run({"count", "--alpha", "nonsense", "--n", "3"});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["error_kind"] == "ParseError");

  r = run({"count", "--alpha", "sqrt:2", "--n", "2000000"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error_kind"] == "ResourceError");

  r = run({"count", "--alpha", "sqrt:2", "--kind", "x", "--n", "3"});
  CHECK(r.code == 1);
  r = run({"count", "--alpha", "sqrt:2", "--n", "3", "--precision-bits", "200"});
  CHECK(r.code == 1);
  r = run({"frobnicate"});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["module"] == "cli");
  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("count") != std::string::npos);
}

TEST_CASE("output is deterministic and formats agree") {
  const std::vector<std::string> args = {"saddle", "--alpha", "pi", "--kind", "p", "--ns", "50,500"};
  CHECK(run(args).out == run(args).out);
  auto t = run({"count", "--alpha", "sqrt:2", "--n", "25", "--format", "table"});
  CHECK(t.out == " n  count\n--  -----\n25    560\n");
  auto full = run({"lambda", "--alpha", "sqrt:2", "--N", "1000", "--full-precision"});
  REQUIRE(full.code == 0);
  CHECK(rows(full)[0]["log_pi"].get<std::string>().size() > 30);
}

#include "doctest.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "dp5/cli.hpp"

using namespace dp5;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dp5");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("count both at B = 1") {
  const auto r = run({"count", "--B", "1", "--method", "both", "--format", "csv", "--no-timing"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "B,method,count,na,nb1,nb2,main_term,ratio,seconds\n1,naive,4,,,,,,\n1,torsor,4,,,,,,\n");
}

TEST_CASE("count both at B = 100") {
  const auto r = run({"count", "--B", "100", "--method", "both"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("2222") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({"count", "--B", "1000", "--method", "naive"}).code == kExitUsage);
  CHECK(run({"count", "--B", "0"}).code == kExitUsage);
  CHECK(run({"count", "--B", "1.5"}).code == kExitUsage);
  CHECK(run({"count", "--tol", "-1"}).code == kExitUsage);
  CHECK(run({"count", "--method", "sieve"}).code == kExitUsage);
  CHECK(run({"count", "--bogus"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"verify", "--inject-fault", "E1-E2"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("csv is identical across worker counts") {
  const auto a = run({"count", "--B", "1000,5000", "--split", "--A", "1", "--format", "csv", "--no-timing",
                      "--workers", "1"});
  const auto b = run({"count", "--B", "1000,5000", "--split", "--A", "1", "--format", "csv", "--no-timing",
                      "--workers", "3"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("B,method,count,na,nb1,nb2,main_term,ratio,seconds\n", 0) == 0);
}

TEST_CASE("json mirrors csv") {
  const auto r = run({"count", "--B", "200", "--json", "--main-term", "--no-timing"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j[0]["count"] == 5638);
  CHECK(j[0]["seconds"].is_null());
  CHECK(j[0]["ratio"].get<double>() > 0);
}

TEST_CASE("constant") {
  const auto text = run({"constant", "--p-max", "100000"});
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("1/864") != std::string::npos);
  const auto js = run({"constant", "--json", "--p-max", "100000"});
  REQUIRE(js.code == kExitOk);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["alpha"] == "1/864");
  CHECK(j.contains("omega_infty_error"));
  CHECK(j.contains("c_error"));
  const auto coarse = nlohmann::json::parse(run({"constant", "--json", "--tol", "1e-2"}).out);
  const auto fine = nlohmann::json::parse(run({"constant", "--json", "--tol", "1e-3"}).out);
  CHECK(std::abs(coarse["omega_infty"].get<double>() - fine["omega_infty"].get<double>()) <=
        coarse["omega_infty_error"].get<double>() + fine["omega_infty_error"].get<double>());
}

TEST_CASE("verify") {
  const auto ok = run({"verify", "--B", "200", "--box", "15"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  const auto bad = run({"verify", "--B", "20", "--box", "10", "--inject-fault", "A1-E1", "--theta-bound", "5"});
  CHECK(bad.code == kExitVerification);
  CHECK(bad.out.find("FAIL  coprimality") != std::string::npos);
}

TEST_CASE("predict") {
  const auto r = run({"predict", "--B", "1000,10000", "--format", "csv", "--no-timing"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "B,count,main_term,ratio,asymptote,asymptote_ratio,seconds");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() >= 6);
    const double ratio = std::stod(f[3]);
    CHECK(ratio > 0);
    CHECK(std::isfinite(ratio));
  }
  CHECK(rows == 2);
  CHECK(run({"predict", "--B", "1000,10000", "--format", "csv", "--no-timing"}).out == r.out);
}

TEST_CASE("config file") {
  const std::string path = "dp5_cli_test.conf";
  {
    std::ofstream f(path);
    f << "B=10\nmethod=both\nformat=csv\nno-timing=true\n";
  }
  const auto r = run({"count", "--config", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("10,naive,92") != std::string::npos);
  CHECK(r.out.find("10,torsor,92") != std::string::npos);
  std::remove(path.c_str());
}

}

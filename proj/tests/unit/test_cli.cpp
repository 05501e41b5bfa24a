#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "capcomp/cli.hpp"
#include "capcomp/energy.hpp"
#include "capcomp/sweep.hpp"

using namespace capcomp;
using nlohmann::json;

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

}  // namespace

TEST_CASE("capacity in every format") {
  auto plain = run({"capacity", "--code", "rll", "--d", "2"});
  CHECK(plain.code == cli::kExitOk);
  CHECK(plain.out.find("value: 0.551463") != std::string::npos);
  CHECK(plain.out.find("method: closed-form") != std::string::npos);

  auto js = run({"capacity", "--code", "sec", "--l", "20", "--w", "12", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto doc = json::parse(js.out);
  CHECK(doc.at("value").get<double>() == doctest::Approx(0.9004952570222677).epsilon(1e-12));
  CHECK(doc.at("spec") == "SEC(L=20,w=12)");

  auto csv = run({"capacity", "--code", "swc", "--t", "3", "--w", "2", "--format", "csv"});
  CHECK(csv.out.find("swc,SWC(T=3,w=2),0.551463,spectral") != std::string::npos);

  auto bounds = run({"capacity", "--code", "swc", "--t", "6", "--w", "3", "--method", "bounds", "--format", "json"});
  const auto b = json::parse(bounds.out);
  CHECK(b.at("lower").get<double>() <= b.at("upper").get<double>());

  auto growth = run({"capacity", "--code", "swc", "--t", "4", "--w", "2", "--method", "growth"});
  CHECK(growth.out.find("value: 0.777607") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"capacity", "--code", "rll"}).code == cli::kExitUsage);
  CHECK(run({"capacity", "--code", "abc", "--d", "1"}).code == cli::kExitUsage);
  CHECK(run({"capacity", "--code", "rll", "--d", "2", "--method", "bounds"}).code == cli::kExitUsage);
  CHECK(run({"outage", "--b", "0.6e0", "--emax", "1"}).code == cli::kExitUsage);
  CHECK(run({"outage", "--b", "3/2", "--emax", "1"}).code == cli::kExitUsage);
  CHECK(run({"nonsense"}).code == cli::kExitUsage);
  CHECK(run({"simulate", "--b", "1/2", "--emax", "1", "--bits", "10x"}).code == cli::kExitUsage);
  CHECK(run({"--state-budget", "8", "capacity", "--code", "swc", "--t", "6", "--w", "3"}).code == cli::kExitUsage);
}

TEST_CASE("outage query") {
  auto plain = run({"outage", "--b", "3/5", "--emax", "6/5"});
  REQUIRE(plain.code == 0);
  CHECK(plain.out.find("sec: 0.666667 (exact) at SEC(L=3,w=2)") != std::string::npos);
  CHECK(plain.out.find("rll: 0.551463 (exact) at RLL(d=2)") != std::string::npos);

  auto js = run({"outage", "--b", "0.6", "--emax", "10", "--family", "sec", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto doc = json::parse(js.out);
  CHECK(doc.at("sec").at("value").get<double>() >= 0.9004952570222677 - 1e-12);
  CHECK_FALSE(doc.contains("rll"));
}

TEST_CASE("simulate emits a trace that round-trips") {
  auto r = run({"simulate", "--b", "3/5", "--emax", "1", "--bits", "101"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("levels") == json({"1", "1", "2/5", "4/5"}));
  CHECK(doc.at("overflows") == json({1}));
  CHECK(doc.at("params").at("b") == "3/5");
  const auto trace = cli::trace_from_json(doc);
  CHECK(cli::trace_to_json(trace) == json({{"levels", doc["levels"]}, {"outages", doc["outages"]}, {"overflows", doc["overflows"]}}));

  auto adv = run({"simulate", "--b", "1/2", "--emax", "3/2", "--code", "sec", "--l", "4", "--w", "2", "--adversarial"});
  REQUIRE(adv.code == 0);
  const auto a = json::parse(adv.out);
  CHECK_FALSE(a.at("outages").empty());
  CHECK(a.at("params").at("bits") == "11000011");

  CHECK(run({"simulate", "--b", "3/5", "--emax", "1", "--code", "rll", "--d", "2", "--adversarial"}).code ==
        cli::kExitUsage);
}

TEST_CASE("sweep writes the fixed header") {
  const std::string path = "capcomp_test_sweep.csv";
  auto r = run({"sweep", "--vary", "b", "--fixed", "10", "--from", "1/10", "--to", "3/10", "--step", "1/10", "--out", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == kSweepCsvHeader);
  CHECK(first.rfind("0.100000,", 0) == 0);
  CHECK(first.substr(first.size() - 8) == "1.000000");
  std::remove(path.c_str());

  auto to_stdout = run({"sweep", "--vary", "emax", "--fixed", "3/5", "--from", "0", "--to", "1", "--step", "1/2"});
  CHECK(to_stdout.out.rfind(kSweepCsvHeader, 0) == 0);
  CHECK(run({"sweep", "--vary", "x", "--fixed", "1", "--from", "0", "--to", "1", "--step", "1"}).code == cli::kExitUsage);
}

TEST_CASE("verify reports per suite") {
  auto r = run({"verify", "--suite", "counts", "--max-n", "8"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("suite") == "counts");
  CHECK(doc.at("passed") == true);
  CHECK(doc.at("checks").get<int>() > 0);
}

TEST_CASE("settings come from a config file and the environment") {
  const std::string path = "capcomp_test.cfg";
  {
    std::ofstream cfg(path);
    cfg << "state-budget=8\n";
  }
  CHECK(run({"--config", path, "capacity", "--code", "swc", "--t", "6", "--w", "3"}).code == cli::kExitUsage);
  CHECK(run({"--config", path, "capacity", "--code", "swc", "--t", "4", "--w", "2"}).code == cli::kExitOk);
  std::remove(path.c_str());

  ::setenv("CAPCOMP_STATE_BUDGET", "8", 1);
  CHECK(run({"capacity", "--code", "swc", "--t", "6", "--w", "3"}).code == cli::kExitUsage);
  ::unsetenv("CAPCOMP_STATE_BUDGET");
  CHECK(run({"capacity", "--code", "swc", "--t", "6", "--w", "3"}).code == cli::kExitOk);
}

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recbases/cli.hpp"

using json = nlohmann::json;

namespace {
struct Run {
  int code;
  std::string out, err;
};
Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = recbases::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}
std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("expand a rational") {
    Run r = run({"expand", "--alpha", "rat:7/3", "--count", "10"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["cf"] == "[2;3]");
    CHECK(j["result"]["terminated"] == true);
    CHECK(r.err.find("[2;3]") != std::string::npos);
  }

  TEST_CASE("certify N = 35") {
    Run r = run({"certify", "--alpha", "surd:(0+1*sqrt(2))/1", "--N", "35"});
    REQUIRE(r.code == 0);
    json c = json::parse(r.out)["result"]["certificate"];
    CHECK(c["k"] == 2);
    CHECK(c["m"] == 99);
  }

  TEST_CASE("complement up to 10^5") {
    Run r = run({"complement", "--alpha", "surd:(0+1*sqrt(2))/1", "--eps", "const:0.1", "--k", "2", "--T", "100000",
                 "--threads", "4"});
    REQUIRE(r.code == 0);
    auto c = json::parse(r.out)["result"]["complement"].get<std::vector<long>>();
    for (long n : {35L, 1189L, 40391L}) CHECK(std::find(c.begin(), c.end(), n) != c.end());
  }

  TEST_CASE("config file reproduces the run byte for byte") {
    const std::string a = "cli_test_a.json", b = "cli_test_b.json", cfg = "cli_test_cfg.json";
    Run r1 = run({"witnesses", "--family", "badapprox", "--count", "4", "--out", a});
    REQUIRE(r1.code == 0);
    json saved = json::parse(slurp(a));
    saved["config"]["out"] = b;
    std::ofstream(cfg) << saved.dump();
    Run r2 = run({"witnesses", "--count", "1", "--config", cfg});
    REQUIRE(r2.code == 0);
    json ja = json::parse(slurp(a)), jb = json::parse(slurp(b));
    ja["config"].erase("out");
    jb["config"].erase("out");
    CHECK(ja.dump() == jb.dump());
    CHECK(jb["result"]["witnesses"].size() == 4);
    for (const auto& p : {a, b, cfg}) std::remove(p.c_str());
  }

  TEST_CASE("identical invocations give identical JSON") {
    std::vector<std::string> args{"exceptional", "--count", "60", "--basis-T", "3000", "--threads", "3"};
    CHECK(run(args).out == run(args).out);
  }

  TEST_CASE("timestamp is opt-in") {
    CHECK_FALSE(json::parse(run({"expand", "--alpha", "rat:1/3"}).out).contains("timestamp"));
    CHECK(json::parse(run({"expand", "--alpha", "rat:1/3", "--timestamp"}).out).contains("timestamp"));
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"certify"}).code == 1);                                   // missing --N
    CHECK(run({"certify", "--N", "36"}).code == 1);                      // even N
    CHECK(run({"expand", "--alpha", "bogus:1"}).code == 1);              // bad descriptor
    CHECK(run({"witnesses", "--family", "generic", "--count", "1"}).code == 3);  // pattern absent
    // a 12-bit decimal cannot separate ||n^2 x|| from eps for long
    CHECK(run({"complement", "--alpha", "dec:1.4142~bits=12", "--T", "5000"}).code == 2);
    CHECK(run({"expand", "--help"}).code == 0);
  }

  TEST_CASE("csv mirror") {
    const std::string p = "cli_test.csv";
    REQUIRE(run({"convergents", "--alpha", "surd:sqrt(2)", "--upto", "5", "--csv", p}).code == 0);
    std::string csv = slurp(p);
    CHECK(csv.rfind("n,a_n,p_n,q_n", 0) == 0);
    CHECK(csv.find("5,2,99,70") != std::string::npos);
    std::remove(p.c_str());
    CHECK(run({"trichotomy", "--directions", "2=rat:1", "--csv", p}).code == 1);
  }

  TEST_CASE("the installed binary maps exit codes the same way") {
    std::string cmd = std::string(RECBASES_CLI_PATH) + " certify --N 36 >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);
  }
}

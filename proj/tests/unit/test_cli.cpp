#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "zetalab/cli/cli.hpp"
#include "zetalab/error.hpp"

using namespace zetalab;

namespace {

const std::string kData = ZETALAB_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "zetalab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json doc(const Run& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("expzeta job") {
  const Run r = run({"expzeta", "--spec", kData + "/gm_id.json", "--p", "2", "--k", "1", "--order", "8"});
  CHECK(r.code == 0);
  const auto d = doc(r);
  CHECK(d["verdict"] == "pass");
  const auto& s = d["results"]["series"];
  REQUIRE(s.size() == 9);
  CHECK(s[0] == nlohmann::json::array({1}));
  CHECK(s[1] == nlohmann::json::array({-1}));
  for (std::size_t i = 2; i < 9; ++i) CHECK(s[i] == nlohmann::json::array({0}));
  CHECK(d["job"]["twist_defaulted"] == true);
  const Run t = run({"expzeta", "--spec", kData + "/gm_id.json", "--p", "2", "--twist", "1"});
  CHECK(doc(t)["job"]["twist_defaulted"] == false);
}

TEST_CASE("exit codes") {
  Run r = run({"zeta", "--spec", kData + "/malformed.json", "--p", "3", "--order", "4"});
  CHECK(r.code == 2);
  CHECK(doc(r)["failures"][0]["error"] == "ParseError");
  CHECK(r.err.find("position 7") != std::string::npos);

  CHECK(run({}).code == 2);
  CHECK(run({"zeta", "--p", "x"}).code == 2);
  CHECK(run({"zeta", "--spec", kData + "/missing.json"}).code == 2);
  CHECK(run({"zeta", "--spec", kData + "/p1.json", "--p", "4"}).code == 2);
  CHECK(run({"heights", "--spec", kData + "/p1.json"}).code == 2);
  CHECK(run({"expzeta", "--spec", kData + "/gm_id.json", "--twist", "a"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  // Budget exhaustion is a module error, not a usage error.
  r = run({"heights", "--spec", kData + "/p1.json", "--bound", "1000", "--budget", "10"});
  CHECK(r.code == 1);
  CHECK(doc(r)["failures"][0]["error"] == "BudgetExceeded");

  CHECK(run({"selftest"}).code == 0);
}

TEST_CASE("tables and replay") {
  Run r = run({"heights", "--spec", kData + "/p1.json", "--bound", "64", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("B,N\n1,4\n2,8\n", 0) == 0);

  const auto dir = std::filesystem::temp_directory_path() / "zetalab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  const std::vector<std::string> job{"ledger", "--spec", kData + "/a1_cells.json", "--p", "3", "--order", "2"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = job;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  CHECK(run(with({"--out", a})).code == 0);
  CHECK(run(with({"--out", b, "--threads", "3"})).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  r = run({"fourier", "--spec", kData + "/quadratic_class.json", "--p", "3", "--format", "csv"});
  CHECK(r.out == "s0,c0,c1\n0,1,0\n1,-2,1\n2,0,1\n");
  CHECK(run({"zeta", "--spec", kData + "/p1.json", "--format", "csv"}).code == 2);
  CHECK(run({"zeta", "--spec", kData + "/p1.json", "--out", "/nonexistent/dir/x.json"}).code == 2);
}

TEST_CASE("ledger, stratify and witt jobs") {
  Run r = run({"ledger"});
  CHECK(r.code == 0);
  const auto d = doc(r);
  CHECK(d["results"]["decompositions"].size() == 10);
  CHECK(d["results"]["broken"]["witness"]["kind"] == "DoubleCovered");

  r = run({"stratify", "--spec", kData + "/line_conic.json", "--bound", "100"});
  CHECK(r.code == 0);
  CHECK(doc(r)["results"]["chain"].size() == 2);

  r = run({"witt", "--spec", kData + "/conic_xy.json", "--p", "3"});
  CHECK(r.code == 0);
  CHECK(doc(r)["results"]["lift"]["plus"]["matrix"] == nlohmann::json::parse("[[3]]"));
}

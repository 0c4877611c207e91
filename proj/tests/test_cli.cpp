#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SCHLAB_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("schlab_test_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("counterexample command") {
  const auto dir = scratch("cx");
  CHECK(run("counterexample --m-lo 4 --m-hi 6 --p 2 --q 1 --out " + dir.string()) == 0);
  const auto csv = slurp(dir / "counterexample.csv");
  CHECK(csv.rfind("m,norm_xm,norm_tensor,ratio\n4,", 0) == 0);
  const auto j = json::parse(slurp(dir / "counterexample.json"));
  CHECK(j.contains("slope_xm"));

  CHECK(run("counterexample --m-lo 5 --m-hi 5 --out " + dir.string()) == 0);
  CHECK_FALSE(json::parse(slurp(dir / "counterexample.json")).contains("slope_xm"));
  CHECK(run("counterexample --m-lo 4 --m-hi 12") == 3);
  CHECK(run("counterexample --m-lo 0 --m-hi 3") == 3);
  CHECK(run("counterexample --p 0") == 3);
  fs::remove_all(dir);
}

TEST_CASE("conv-factor command") {
  const auto a = scratch("cf_a"), b = scratch("cf_b");
  CHECK(run("conv-factor --group Z64 --s 0.5 --seed 9 --out " + a.string()) == 0);
  const auto j = json::parse(slurp(a / "conv_factor.json"));
  CHECK(j["passed"] == true);
  CHECK(std::abs(j["product_of_norms"].get<double>() / j["fhat_s_norm"].get<double>() - 1) <= 1e-9);
  CHECK(fs::exists(a / "chain" / "manifest.json"));

  // A function read back from file reproduces the report byte for byte.
  CHECK(run("conv-factor --group Z64 --s 0.5 --f-file " + (a / "f.csv").string() + " --out " + b.string()) == 0);
  const auto c = scratch("cf_c");
  CHECK(run("conv-factor --group Z64 --s 0.5 --f-file " + (a / "f.csv").string() + " --out " + c.string()) == 0);
  CHECK(slurp(b / "conv_factor.json") == slurp(c / "conv_factor.json"));

  const auto d = scratch("cf_d");
  CHECK(run("conv-factor --group Z4xZ3 --s 1 --out " + d.string()) == 0);
  CHECK(json::parse(slurp(d / "conv_factor.json"))["middle_operator_norm"].get<double>() == doctest::Approx(1));

  CHECK(run("conv-factor --tol-abs 1e-300 --tol-rel 1e-300") == 2);
  CHECK(run("conv-factor --s 0") == 3);
  CHECK(run("conv-factor --group Zx") == 3);
  CHECK(run("conv-factor --group Z4 --f-file /nonexistent.csv") == 3);
  for (const auto& p : {a, b, c, d}) fs::remove_all(p);
}

TEST_CASE("other commands") {
  CHECK(run("five-factor --r 0.5") == 0);
  CHECK(run("five-factor --r 1") == 0);
  CHECK(run("five-factor --r 2") == 3);
  CHECK(run("tensor --dim 4 --p 1 --q 2") == 0);
  CHECK(run("vecconv --group Z8 --dim 2 --terms 4") == 0);
  CHECK(run("vecconv --group Z2 --terms 3") == 3);
  CHECK(run("nonsense") == 3);
  CHECK(run("") == 3);
}

TEST_CASE("config file with flag override") {
  const auto dir = scratch("cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "group = Z8\ns = 1\nseed = 5\n";
  CHECK(run("--config " + (dir / "run.cfg").string() + " conv-factor --out " + (dir / "a").string()) == 0);
  auto j = json::parse(slurp(dir / "a" / "conv_factor.json"));
  CHECK(j["group"] == "Z8");
  CHECK(j["s"] == 1.0);
  CHECK(run("--config " + (dir / "run.cfg").string() + " conv-factor --group Z2xZ2 --out " + (dir / "b").string()) == 0);
  j = json::parse(slurp(dir / "b" / "conv_factor.json"));
  CHECK(j["group"] == "Z2xZ2");
  CHECK(j["source"]["seed"] == 5);
  CHECK(run("--config /nonexistent.cfg conv-factor") == 3);
  fs::remove_all(dir);
}

TEST_CASE("suite command") {
  const auto a = scratch("suite_a"), b = scratch("suite_b");
  CHECK(run("suite --out " + a.string()) == 0);
  CHECK(run("suite --out " + b.string()) == 0);
  CHECK(slurp(a / "suite.json") == slurp(b / "suite.json"));
  const auto j = json::parse(slurp(a / "suite.json"));
  CHECK(j["passed"] == true);
  CHECK(j["suites"].size() == 10);

  // Corrupted fixture: the band no longer contains the measured ratios.
  auto cal = json::parse(slurp(SCHLAB_FIXTURE_DIR "/calibration.json"));
  cal["oneil_band_2_1"] = {0.9, 1.0};
  const auto bad = scratch("suite_bad");
  fs::create_directories(bad);
  std::ofstream(bad / "cal.json") << cal.dump();
  CHECK(run("suite --fixtures " + (bad / "cal.json").string() + " --out " + bad.string()) == 2);
  const auto r = json::parse(slurp(bad / "suite.json"));
  bool found = false;
  for (const auto& s : r["suites"])
    if (s["name"] == "oneil") {
      CHECK(s["passed"] == false);
      CHECK(s["first_failure"].contains("ratio"));
      found = true;
    }
  CHECK(found);

  std::ofstream(bad / "junk.json") << "{ not json";
  CHECK(run("suite --fixtures " + (bad / "junk.json").string()) == 3);

  CHECK(run("suite --seed 77 --out " + a.string()) == 0);
  for (const auto& p : {a, b, bad}) fs::remove_all(p);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

#include "slicelab/suites.hpp"

using namespace slicelab;
using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

/// Runs the CLI through the shell, capturing stdout; stderr is discarded.
Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" SLICELAB_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("liecore suite passes on both algebras") {
  const auto report = suites::run_suite("liecore", suites::Config{});
  CHECK(report.passed());
  CHECK(report.find("a1.liecore.jacobi") != nullptr);
  CHECK(report.find("a2.liecore.jacobi") != nullptr);
  for (std::size_t i = 1; i < report.checks.size(); ++i) CHECK(report.checks[i - 1].name < report.checks[i].name);
}

TEST_CASE("config validation") {
  suites::Config c;
  c.algebra = "a3";
  CHECK_THROWS_AS(c.validate(), MathError);
  c.algebra = "a2";
  c.partition = std::vector<int>{2};
  CHECK_THROWS_AS(c.validate(), MathError);
  c.partition = std::vector<int>{2, 1};
  CHECK_NOTHROW(c.validate());
  c.samples = 0;
  CHECK_THROWS_AS(c.validate(), MathError);
  CHECK_THROWS_AS(suites::run_suite("everything", suites::Config{}), MathError);
}

TEST_CASE("a corrupted structure table is reported with a witness") {
  const lie::LieAlgebra bad = lie::LieAlgebra::sl(3).with_structure_constant(0, 5, 2, Rational(7));
  const auto checks = suites::liecore_checks(bad, suites::Config{});
  const suites::CheckResult* jac = nullptr;
  for (const auto& c : checks)
    if (c.name == "a2.liecore.jacobi") jac = &c;
  REQUIRE(jac != nullptr);
  CHECK(!jac->passed);
  CHECK(jac->witness.count("x") == 1);
  CHECK(jac->witness.count("y") == 1);
  CHECK(jac->witness.count("z") == 1);
  CHECK(jac->witness.at("jacobiator") != "0");
}

TEST_CASE("reports are deterministic and well formed") {
  suites::Config c;
  c.seed = 7;
  c.samples = 5;
  const std::string a = suites::to_json(suites::run_suite("all", c));
  const std::string b = suites::to_json(suites::run_suite("all", c));
  CHECK(a == b);
  const json j = json::parse(a);
  CHECK(j["schema"] == 1);
  CHECK(j["suite"] == "all");
  CHECK(j["config_echo"]["seed"] == 7);
  CHECK(j["config_echo"]["samples"] == 5);
  CHECK(j["passed"] == true);
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["summary"]["total"] == j["checks"].size());
  c.seed = 8;
  CHECK(suites::to_json(suites::run_suite("all", c)) != a);
}

TEST_CASE("cli verify emits JSON and exit status") {
  const Run r = cli("verify liecore --algebra a1");
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["config_echo"]["algebra"] == "a1");
  CHECK(j["config_echo"]["partition"].is_null());

  CHECK(cli("verify nope").status == 2);
  CHECK(cli("verify liecore --algebra a3").status == 2);
  CHECK(cli("verify slices --algebra a2 --partition 2").status == 2);
  CHECK(cli("limit").status == 2);
  CHECK(cli("--help").status == 0);
}

TEST_CASE("cli seed precedence: flag over environment over file") {
  const std::string path = "slicelab_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "# test config\nseed=9\nsamples=3\n";
  }
  auto seed_of = [](const Run& r) { return json::parse(r.out)["config_echo"]["seed"].get<int>(); };
  const Run file = cli("verify liecore --algebra a1 --config " + path);
  CHECK(seed_of(file) == 9);
  CHECK(json::parse(file.out)["config_echo"]["samples"] == 3);
  CHECK(seed_of(cli("verify liecore --algebra a1 --config " + path, "SLICELAB_SEED=5")) == 5);
  CHECK(seed_of(cli("verify liecore --algebra a1 --config " + path + " --seed 11", "SLICELAB_SEED=5")) == 11);
  CHECK(cli("verify liecore --algebra a1 --seed x").status == 2);
  std::remove(path.c_str());
}

TEST_CASE("cli limit, fibre and slice-project") {
  const Run lim = cli("--json limit --curve 'diag(t,1)'");
  REQUIRE(lim.status == 0);
  const json l = json::parse(lim.out);
  CHECK(l["boundary"] == true);
  CHECK(l["subspace"] == "{(h, h), (f, 0), (0, e)}");
  CHECK(json::parse(cli("--json limit --curve 'diag(1,1)'").out)["boundary"] == false);
  CHECK(cli("limit --curve 'diag(t,'").status == 2);

  const Run fib = cli("--json fibre --point 's(1)'");
  REQUIRE(fib.status == 0);
  const json f = json::parse(fib.out);
  CHECK(f["projective_dim"] == 1);
  CHECK(f["boundary_points"].size() == 2);
  CHECK(cli("fibre --point 's(1)' --algebra a2").status == 2);

  const Run proj = cli("--json slice-project --element e+h");
  REQUIRE(proj.status == 0);
  CHECK(cli("slice-project --element h").status == 2);
  CHECK(cli("slice-project --element E12+E23 --partition 3").status == 0);
}

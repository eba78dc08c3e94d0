#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_tool(const std::string& args, const std::string& env = "") {
  const char* bin = std::getenv("ECS_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("eigenvalue run emits the series as json") {
  auto r = run_tool("eigenvalue -n 1,0 --lambda 1/2 --Lq 2 --Sgamma 4");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"e0\": \"13/8\""));
  CHECK(contains(r.out, "\"algorithm\": \"lagrange\""));
  CHECK(contains(r.out, "\"value\": \"4/5\""));
  CHECK(contains(r.out, "\"value\": \"-24/35\""));
}

TEST_CASE("runs are deterministic byte for byte") {
  const char* cmd = "eigenvalue -n 2,0 --lambda 3/2 --Lq 3 --Sgamma 6";
  auto a = run_tool(cmd);
  auto b = run_tool(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("algorithms cross check under --algorithm all") {
  auto r = run_tool(
      "eigenvalue -n 2,1 --lambda 4/3 --Lq 2 --Sgamma 5 --algorithm all");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"algorithm\": \"all\""));
}

TEST_CASE("resonant configuration exits with the dedicated code") {
  auto r = run_tool("eigenvalue -n 1,0 --lambda 2 --Lq 3");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.out, "resonant"));
}

TEST_CASE("configuration errors exit with the usage code") {
  CHECK(run_tool("eigenvalue -n 0,1 --lambda 1/2").exit_code == 2);
  CHECK(run_tool("eigenvalue -n 1,0 --lambda 0").exit_code == 2);
  CHECK(run_tool("eigenvalue -n 1,0 --lambda 1/2 --format bogus").exit_code ==
        2);
  CHECK(run_tool("eigenvalue -n 1,0 --lambda 1/2 --format latex").exit_code ==
        2);
  CHECK(run_tool("eigenvalue -N 3 -n 1,0,0 --lambda 1/2 --algorithm q2")
            .exit_code == 2);
  CHECK(run_tool("eigenvalue -n 1,0 --lambda 1/2 --algorithm bogus")
            .exit_code == 2);
}

TEST_CASE("trigonometric truncation leaves only the constant term") {
  auto r = run_tool("eigenvalue -n 1,0 --lambda 1/2 --Lq 0 --Sgamma 4");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"e0\": \"13/8\""));
  CHECK(contains(r.out, "\"terms\": []"));
}

TEST_CASE("symbolic latex output shows the shared denominator layout") {
  auto r = run_tool(
      "eigenvalue -n 1,0 --symbolic --Lq 2 --Sgamma 4 --format latex");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\\frac{\\gamma^{2}}{P^{2} - 1}"));
  CHECK(contains(r.out, "(P^{2}-4)(P^{2}-1)"));
}

TEST_CASE("cache reuse does not change the output") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "ecs-cli-cache-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string env = "ECS_CACHE_DIR=" + dir.string();
  const char* cmd = "eigenvalue -n 2,0 --lambda 5/2 --Lq 3 --Sgamma 6";
  auto cold = run_tool(cmd, env);
  CHECK(cold.exit_code == 0);
  bool wrote = false;
  for (auto it = fs::recursive_directory_iterator(dir);
       it != fs::recursive_directory_iterator(); ++it)
    if (it->is_regular_file()) wrote = true;
  CHECK(wrote);
  auto warm = run_tool(cmd, env);
  CHECK(warm.exit_code == 0);
  CHECK(cold.out == warm.out);
  fs::remove_all(dir);
}

TEST_CASE("alpha run reports a clean recursion residual") {
  auto r = run_tool("alpha -n 1,0 --lambda 1/2 --Lq 2 --Sgamma 4");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"max_residual\": \"0\""));
  CHECK(contains(r.out, "\"nonzero_interior\": []"));
}

TEST_CASE("jack run collapses to partition coefficients") {
  auto r = run_tool("jack -n 2,0 --lambda 1 --Sgamma 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"partition\""));
  CHECK(contains(r.out, "\"value\": \"1\""));
}

TEST_CASE("single mode kernel run emits monomial terms") {
  auto r = run_tool("fhat -n 2 -N 1 --lambda 3/2 --Lq 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"value\": \"15/8\""));
}

TEST_CASE("verify emits the comparison table") {
  auto csv = run_tool("verify --q 0,0.04");
  CHECK(csv.exit_code == 0);
  CHECK(contains(csv.out, "q,lambda,n,E_series,E_galerkin,abs_err,slope"));
  auto js = run_tool("verify --q 0 --format json");
  CHECK(js.exit_code == 0);
  size_t pos = js.out.find("\"abs_err\": \"");
  REQUIRE(pos != std::string::npos);
  long double err = strtold(js.out.c_str() + pos + 12, nullptr);
  CHECK(err < 1e-8L);
}

TEST_CASE("verify warns when the grid is coarse for small coupling") {
  auto r = run_tool("verify --lambda 1/2 --q 0 --grid 4096");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "warning"));
  auto quiet = run_tool("verify --lambda 5/2 --q 0 --grid 4096");
  CHECK(quiet.exit_code == 0);
  CHECK(!contains(quiet.out, "warning"));
}

TEST_CASE("selftest passes its reference checks") {
  auto r = run_tool("selftest");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "golden-order-4: PASS"));
  CHECK(contains(r.out, "reversion-printed-5: PASS"));
  CHECK(contains(r.out, "reversion-iterated-8: PASS"));
  CHECK(contains(r.out, "divisor-rule-7: PASS"));
  CHECK(contains(r.out, "all checks passed"));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static bool env_ready = [] {
    static std::string dir =
        (std::filesystem::temp_directory_path() / "chevlab-test-cli-cache")
            .string();
    std::filesystem::remove_all(dir);
    setenv("CHEVLAB_CACHE", dir.c_str(), 1);
    return true;
  }();
  (void)env_ready;

  std::string cmd = std::string(CHEVLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace

TEST_CASE("rootsys: values and exit codes") {
  auto r = run_cli("rootsys A 2 --no-meta");
  CHECK(r.exit_code == 0);
  json d = json::parse(r.out);
  CHECK(d["verdict"] == "pass");
  CHECK(d["checks"][0]["values"]["positive_roots"] == 3);
  CHECK(d["checks"][2]["values"]["vcd_over_Z"] == 3);
  CHECK(d["root_system"]["coxeter"] == json({{1, 3}, {3, 1}}));

  CHECK(run_cli("rootsys A 1 --no-meta").exit_code == 0);
  json d1 = json::parse(run_cli("rootsys A 1 --no-meta").out);
  CHECK(d1["checks"][2]["values"]["vcd_over_Z"] == 1);

  // usage errors exit 2
  CHECK(run_cli("rootsys Z 9").exit_code == 2);
  CHECK(run_cli("rootsys").exit_code == 2);
  CHECK(run_cli("frobnicate 1").exit_code == 2);
}

TEST_CASE("deterministic JSON with --no-meta") {
  auto a = run_cli("coxeter C 2 --no-meta --no-cache");
  auto b = run_cli("coxeter C 2 --no-meta --no-cache");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"ms\"") == std::string::npos);
  CHECK(a.out.find("generated_at") == std::string::npos);

  auto r1 = run_cli("verify sl 2 3 --no-meta");
  auto r2 = run_cli("verify sl 2 3 --no-meta");
  CHECK(r1.out == r2.out);
}

TEST_CASE("coxeter command") {
  auto r = run_cli("coxeter A 2 --no-meta");
  CHECK(r.exit_code == 0);
  json d = json::parse(r.out);
  CHECK(d["verdict"] == "pass");
  std::map<std::string, json> by_name;
  for (const auto& c : d["checks"]) by_name[c["name"]] = c;
  CHECK(by_name["weyl-order"]["values"]["order"] == 6);
  CHECK(by_name["poincare"]["values"]["coefficients"] ==
        json({1, 2, 2, 1}));
  CHECK(by_name["sign-reversal"]["status"] == "pass");
  CHECK(by_name["sphere-homology"]["status"] == "pass");

  auto c2 = json::parse(run_cli("coxeter C 2 --no-meta").out);
  for (const auto& c : c2["checks"])
    if (c["name"] == "poincare")
      CHECK(c["values"]["coefficients"] == json({1, 2, 2, 2, 1}));

  // above the complex guard the heavy checks are skipped, not failed
  auto d4 = json::parse(run_cli("coxeter D 4 --no-meta --max-complex 10").out);
  CHECK(d4["verdict"] == "pass");
  for (const auto& c : d4["checks"])
    if (c["name"] == "sphere-homology") CHECK(c["status"] == "skipped");
}

TEST_CASE("coxeter E6 reuses the enumeration cache on the second run") {
  auto cold = json::parse(run_cli("coxeter E 6 --no-meta").out);
  CHECK(cold["verdict"] == "pass");
  std::map<std::string, json> by_name;
  for (const auto& c : cold["checks"]) by_name[c["name"]] = c;
  CHECK(by_name["weyl-order"]["values"]["order"] == 51840);
  CHECK(by_name["poincare"]["values"]["degree"] == 36);
  CHECK(by_name["coxeter-complex"]["status"] == "skipped");

  auto warm = json::parse(run_cli("coxeter E 6 --no-meta").out);
  for (const auto& c : warm["checks"])
    if (c["name"] == "weyl-order") CHECK(c["values"]["from_cache"] == true);
}

TEST_CASE("building command") {
  auto r = run_cli("building sl 3 2 --no-meta");
  CHECK(r.exit_code == 0);
  json d = json::parse(r.out);
  CHECK(d["verdict"] == "pass");
  for (const auto& c : d["checks"]) {
    if (c["name"] == "build") {
      CHECK(c["values"]["vertices"] == 14);
      CHECK(c["values"]["chambers"] == 21);
    }
    if (c["name"] == "steinberg-dimension") {
      CHECK(c["values"]["dimension"] == 8);
    }
  }
  auto sp = json::parse(run_cli("building sp 4 2 --no-meta").out);
  for (const auto& c : sp["checks"])
    if (c["name"] == "steinberg-dimension") CHECK(c["values"]["dimension"] == 16);

  CHECK(run_cli("building gl 3 2").exit_code == 2);
  CHECK(run_cli("building sl 3 4").exit_code == 2);
  CHECK(run_cli("building sl 3 2 --ring z").exit_code == 2);
}

TEST_CASE("verify command") {
  auto r = run_cli("verify sl 2 3 --no-meta --samples 25");
  CHECK(r.exit_code == 0);
  json d = json::parse(r.out);
  CHECK(d["verdict"] == "pass");
  for (const auto& c : d["checks"]) {
    if (c["name"] == "coinvariants-Q") CHECK(c["values"]["dim"] == 0);
    if (c["name"] == "coinvariants-F2") CHECK(c["values"]["unconstrained"] == true);
    if (c["name"] == "generation") CHECK(c["values"]["st_dim"] == 3);
  }
}

TEST_CASE("reduce command") {
  auto r = run_cli("reduce 1,0:5,2 --no-meta");
  CHECK(r.exit_code == 0);
  json d = json::parse(r.out);
  CHECK(d["checks"][0]["values"]["path"] ==
        json({{1, 0}, {2, 1}, {5, 2}}));

  auto triv = json::parse(run_cli("reduce 1,0:0,1 --no-meta").out);
  CHECK(triv["checks"][0]["values"]["path"] == json({{1, 0}, {0, 1}}));

  CHECK(run_cli("reduce 1,0:2,0").exit_code == 2);  // det 0
  CHECK(run_cli("reduce 1,0").exit_code == 2);
  CHECK(run_cli("reduce 1,0:bad").exit_code == 2);
}

// End-to-end checks of the command-line tool: exit codes, JSON shapes,
// round trips through the loaders, and determinism.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef JUSTINF_CLI_PATH
#error "JUSTINF_CLI_PATH must point at the built binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(JUSTINF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WEXITSTATUS(status);
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/justinf_cli_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("word problem commands") {
  auto r = run_cli("grig trivial adadadad");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["trivial"] == true);

  CHECK(json::parse(run_cli("grig trivial ab").out)["trivial"] == false);
  CHECK(json::parse(run_cli("grig equal d bc").out)["equal"] == true);
  CHECK(json::parse(run_cli("grig order ab").out)["order"] == 16);
  CHECK(json::parse(run_cli("grig normalize abba").out)["normal_form"] == "");

  auto w = json::parse(run_cli("grig wreath ada").out);
  CHECK(w["first"] == "b");
  CHECK(w["second"] == "");
  CHECK(w["active"] == false);
}

TEST_CASE("kernel test matches the documented shape") {
  std::string z = R"([{"word":"a","coeff":"1"},{"word":"da","coeff":"-1"},
                      {"word":"ad","coeff":"-1"},{"word":"dad","coeff":"1"}])";
  std::string path = write_temp("kernel.json", z);
  auto r = run_cli("algebra kernel-test --input " + path);
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["in_kernel"] == true);
  CHECK(j["depth"] == 1);

  SUBCASE("non-kernel element carries a witness") {
    std::string s = R"([{"word":"","coeff":"1"},{"word":"b","coeff":"1"},
                        {"word":"c","coeff":"-1"},{"word":"d","coeff":"-1"}])";
    std::string spath = write_temp("survivor.json", s);
    json jj = json::parse(run_cli("algebra kernel-test --input " + spath).out);
    CHECK(jj["in_kernel"] == false);
    CHECK(jj.contains("witness"));

    auto scal = json::parse(run_cli("algebra scalar-entry --input " + spath).out);
    CHECK(scal["lambda"] == "2");
    CHECK(scal["depth"] == 4);
  }

  SUBCASE("scalar-entry rejects kernel elements with exit 1") {
    CHECK(run_cli("algebra scalar-entry --input " + path).code == 1);
  }
}

TEST_CASE("resource caps exit with code 2") {
  CHECK(run_cli("algebra expand --depth 15 --input " +
                write_temp("one.json", R"([{"word":"a","coeff":"1"}])"))
            .code == 2);
  CHECK(run_cli("bratteli limit-dim --rule y_infty --depth 20").code == 2);
  CHECK(run_cli("bratteli limit-dim --rule y_infty --depth 20 --depth-cap 32").code == 0);
  CHECK(run_cli("grig quotient-order --level 6").code == 2);

  SUBCASE("environment overrides") {
    CHECK(run_cli("algebra expand --depth 3 --input " +
                      write_temp("one.json", R"([{"word":"a","coeff":"1"}])"),
                  "JUSTINF_DEPTH_CAP=2")
              .code == 2);
  }
}

TEST_CASE("malformed input exits with code 3") {
  CHECK(run_cli("algebra kernel-test --input " + write_temp("bad.json", "{oops")).code == 3);
  CHECK(run_cli("grig trivial abe").code == 3);
  CHECK(run_cli("frobnicate").code == 3);
}

TEST_CASE("bratteli commands round-trip through the loaders") {
  auto build = run_cli("bratteli build --rule y_infty --depth 6");
  CHECK(build.code == 0);
  std::string path = write_temp("diagram.json", build.out);

  auto lim = json::parse(run_cli("bratteli limit-dim --input " + path).out);
  CHECK(lim["kind"] == "infinite");

  auto lim2 = json::parse(run_cli("bratteli limit-dim --rule y_infty --depth 6 --omit 2").out);
  CHECK(lim2["kind"] == "finite");
  CHECK(lim2["dims"] == json::array({1}));

  auto sizes = json::parse(run_cli("bratteli primitive-sizes --rule y_infty --depth 10 --jmax 8").out);
  CHECK(sizes["sizes"] == json::array({1, 1, 2, 4, 8, 16, 32, 64}));

  auto ideals = json::parse(run_cli("bratteli ideals --rule y_infty --depth 3 --enum-depth 3").out);
  CHECK(ideals["count"] == 8);

  auto ess = json::parse(
      run_cli("bratteli essential --rule strictly_rfd --depth 6 --left-half --enum-depth 2").out);
  CHECK(ess["essential"] == true);

  auto dot = run_cli("bratteli export-dot --rule y_infty --depth 3 --omit 2");
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
  CHECK(dot.out.find("fillcolor") != std::string::npos);
}

TEST_CASE("k0 and space commands") {
  auto push = json::parse(run_cli("k0 push 1 --to 5").out);
  CHECK(push["vector"] == json::array({"1", "1", "2", "4", "8"}));
  CHECK(json::parse(run_cli("k0 positive 1,-1").out)["positive"] == false);
  CHECK(json::parse(run_cli("k0 equal 1 1,1").out)["equal"] == true);

  auto unit = json::parse(run_cli("k0 unit --terms 6").out);
  CHECK(unit["terms"] == json::array({1, 1, 2, 4, 8, 16}));

  auto y2 = run_cli("space build-yn --n 2");
  CHECK(y2.code == 0);
  std::string path = write_temp("y2.json", y2.out);
  CHECK(json::parse(run_cli("space classify --input " + path).out)["yn"] == 2);
  CHECK(json::parse(run_cli("space check --input " + path).out)["spectral"] == true);
}

TEST_CASE("identical invocations are byte-identical") {
  for (const char* cmd : {"grig perm abab --level 5", "bratteli build --rule strictly_rfd --depth 5",
                          "algebra commutant --level 4"}) {
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("plain format prints key=value lines") {
  auto r = run_cli("--format plain grig trivial adadadad");
  CHECK(r.code == 0);
  CHECK(r.out.find("trivial=true") != std::string::npos);
}

TEST_CASE("the verification battery runs from the CLI") {
  auto r = run_cli("--format plain verify-paper");
  CHECK(r.code == 0);
  CHECK(r.out.find("AC1") != std::string::npos);
  CHECK(r.out.find("AC12") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("all criteria passed") != std::string::npos);
}

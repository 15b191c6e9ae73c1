#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "hypbil/json_io.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  std::string output;
  int exit_code = -1;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(HYPBIL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("tables serialize deterministically") {
  RunResult a = run("table regular --k 3");
  RunResult b = run("table regular --k 3");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  json j = json::parse(a.output);
  CHECK(j["table"]["side_lengths"][0].get<double>() ==
        Catch::Approx(1.3169578969248166).margin(1e-10));
  CHECK(j["config"]["command"] == "table regular");
  CHECK(j["config"]["k"] == 3);
}

TEST_CASE("serialized tables round trip") {
  RunResult r = run("table from-sides --k 3 --sides 1.40,1.28,1.33");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output)["table"];
  std::vector<hypbil::DiscPoint> verts;
  for (const auto& v : j["vertices"])
    verts.push_back({v[0].get<double>(), v[1].get<double>()});
  hypbil::Table T = hypbil::table_from_vertices(
      verts, j["holonomy_residual"].get<double>());
  for (size_t i = 0; i < 6; ++i) {
    CHECK(T.side_lengths()[i] ==
          Catch::Approx(j["side_lengths"][i].get<double>()).margin(1e-12));
    CHECK(T.angles[i] ==
          Catch::Approx(j["angles"][i].get<double>()).margin(1e-12));
  }
}

TEST_CASE("exit codes distinguish usage and computation errors") {
  CHECK(run("table regular --k 3").exit_code == 0);
  CHECK(run("trajectory --k 3 --sequence 1,1").exit_code == 1);
  CHECK(run("trajectory --k 3 --sequence 1,2").exit_code == 1);
  CHECK(run("--bogus-flag").exit_code == 2);
  CHECK(run("trajectory --k 3").exit_code == 2);  // missing --sequence
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("lambert table parameters") {
  RunResult r = run("table lambert --k 3 --t 0.658479");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output)["table"];
  CHECK(std::fabs(j["side_a"].get<double>() - j["side_b"].get<double>()) <
        1e-6);
}

TEST_CASE("lift and filling results match the library") {
  json lift = json::parse(run("lift --k 3 --sequence 1,4").output);
  CHECK(lift["count"] == 1);
  CHECK(lift["word"] == "JK");
  CHECK(lift["per_lift_length"].get<double>() ==
        Catch::Approx(14.101977392312698).margin(1e-9));

  json fill = json::parse(run("filling --k 3 --sequence 1,4 --orbit").output);
  CHECK(fill["is_filling"] == true);
  CHECK(fill["total_area"].get<double>() ==
        Catch::Approx(3.14159265358979).margin(1e-6));
  json fill1 = json::parse(run("filling --k 3 --sequence 1,4").output);
  CHECK(fill1["is_filling"] == false);
}

TEST_CASE("optimization subcommands") {
  json m = json::parse(run("minimize --k 3 --sequence 1,3,5").output);
  CHECK(m["converged"] == true);
  CHECK(m["distance_to_regular"].get<double>() < 1e-4);
  CHECK(m["config"]["seed"] == 0);

  RunResult m1 = run("minimize --k 3 --sequence 1,4 --seed 7");
  RunResult m2 = run("minimize --k 3 --sequence 1,4 --seed 7");
  CHECK(m1.output == m2.output);

  json g = json::parse(run("minimize-lambert --k 3 --sequence 2,3,4").output);
  CHECK(g["converged"] == true);
  CHECK(std::fabs(g["sinh_sq"].get<double>() - 0.5) < 1e-6);
}

TEST_CASE("file outputs") {
  std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR")
                                                      : "/tmp");
  std::string jpath = dir + "/hypbil_test_out.json";
  std::string spath = dir + "/hypbil_test_out.svg";

  RunResult direct = run("family --k 3 --sequence 1,4");
  RunResult filed =
      run("family --k 3 --sequence 1,4 --json " + jpath + " --svg " + spath);
  CHECK(filed.exit_code == 0);
  CHECK(slurp(jpath) == direct.output);

  std::string svg = slurp(spath);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("#1f77b4") != std::string::npos);  // blue sides
  CHECK(svg.find("#d62728") != std::string::npos);  // red sides
  std::remove(jpath.c_str());
  std::remove(spath.c_str());

  json fam = json::parse(direct.output);
  REQUIRE(fam["members"].size() == 6);
  double avg = fam["average_length"].get<double>();
  CHECK(avg == Catch::Approx(3.525494348078172).margin(1e-10));
}

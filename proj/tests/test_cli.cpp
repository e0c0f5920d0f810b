#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWork = fs::path(SCHIFFER_TEST_WORKDIR) / "cli";

int run(const std::string& args, const std::string& out_name = "stdout.txt") {
  fs::create_directories(kWork);
  const std::string cmd = std::string("\"") + SCHIFFER_CLI + "\" " + (args.rfind("--format", 0) == 0 ? "" : "--format json ") + args + " > \"" + (kWork / out_name).string() +
                          "\" 2> \"" + (kWork / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json output() { return json::parse(slurp(kWork / "stdout.txt")); }

std::string scenario(const std::string& name) { return "\"" + (fs::path(SCHIFFER_SCENARIOS) / name).string() + "\""; }

fs::path write(const std::string& name, const std::string& text) {
  fs::create_directories(kWork);
  std::ofstream(kWork / name) << text;
  return kWork / name;
}

}  // namespace

TEST_CASE("cocycle") {
  CHECK(run("cocycle --case NN --n 3 --point 2 --point 1.5,1") == 0);
  const json j = output();
  CHECK(j["pass"] == true);
  CHECK(j["base_order"] == 3);
  CHECK(!j["oracle"].is_null());
  CHECK(j["points"].size() == 2);

  CHECK(run("cocycle --case SQ --m 2 --n 5") == 0);
  CHECK(output()["oracle"].is_null());

  CHECK(run("--format text cocycle --case SP") == 0);
  CHECK(slurp(kWork / "stdout.txt").find("PASS") != std::string::npos);

  CHECK(run("--format json --tol 1e-14 cocycle --case NN --n 3 --point 1.5,1") == 2);
  CHECK(run("cocycle --case XX") == 1);
  CHECK(run("cocycle --point 1,x") == 1);
  CHECK(run("cocycle") == 0);
  CHECK(output()["case"] == "SS");
}

TEST_CASE("scenario subcommands") {
  CHECK(run("gamma " + scenario("gamma_trivial.json")) == 0);
  const json g = output();
  CHECK(g["pass"] == true);
  CHECK(std::abs(g["closed"]["order1"][0][0][1].get<double>() - 1.5707963267948966) < 1e-14);

  CHECK(run("gamma " + scenario("gamma_g2.json")) == 0);
  CHECK(run("omega " + scenario("omega_pole.json")) == 0);
  CHECK(output()["terms"].size() == 4);
  CHECK(run("rank " + scenario("rank_x5p1.json")) == 0);
  CHECK(output()["rank"] == 3);

  const auto bad_rank = write("bad_rank.json", R"({"kind": "rank", "f": [1, 0, 0, 0, 0, 1],
    "sites": [{"x": 0, "y": 1, "exponents": [1]}], "expected_rank": 3})");
  CHECK(run("rank \"" + bad_rank.string() + "\"") == 2);

  const auto bad_field = write("bad_field.json", R"({"kind": "gamma", "omegas": "none"})");
  CHECK(run("gamma \"" + bad_field.string() + "\"") == 1);
  CHECK(slurp(kWork / "stderr.txt").find("omegas") != std::string::npos);

  const auto wrong_kind = write("wrong_kind.json", R"({"kind": "rank", "f": [1, 0, 0, 1], "sites": []})");
  CHECK(run("gamma \"" + wrong_kind.string() + "\"") == 1);
  CHECK(run("gamma missing.json") == 1);
}

TEST_CASE("out option writes the report") {
  const fs::path report = kWork / "report.json";
  fs::remove(report);
  CHECK(run("--out \"" + report.string() + "\" gamma " + scenario("gamma_trivial.json")) == 0);
  CHECK(json::parse(slurp(report))["pass"] == true);
}

TEST_CASE("plot output is deterministic") {
  const fs::path a = kWork / "a.svg", b = kWork / "b.svg", p = kWork / "k.pgm";
  CHECK(run("plot --map N --n 5 -o \"" + a.string() + "\"") == 0);
  CHECK(output()["roots_of_unity_residual"].get<double>() < 1e-12);
  CHECK(run("plot --map N --n 5 -o \"" + b.string() + "\"") == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("<svg") != std::string::npos);

  CHECK(run("plot --map K --theta 1.3 -o \"" + p.string() + "\"") == 0);
  CHECK(output()["reflection_residual"].get<double>() < 1e-12);
  CHECK(slurp(p).rfind("P5", 0) == 0);

  CHECK(run("plot --map N --n 1 -o \"" + a.string() + "\"") == 1);
}

TEST_CASE("verify") {
  CHECK(run("verify cocycles") == 0);
  const json j = output();
  CHECK(j["pass"] == true);
  CHECK(j["results"].size() == 1);
  CHECK(run("verify nonsense") == 1);
}

#include "doctest.h"

#include "commands.hpp"
#include "infoprice/corpus.hpp"
#include "infoprice/problem_file.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace infoprice;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = INFOPRICE_CORPUS_DIR;

fs::path scratchDir() {
  const auto dir = fs::temp_directory_path() / "infoprice_test_cli";
  fs::create_directories(dir);
  return dir;
}

fs::path writeFile(const std::string& name, const std::string& text) {
  const auto path = scratchDir() / name;
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every numeric field is finite or one of the strings "inf"/"-inf".
bool wellFormed(const json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_string()) return j != "nan";
  if (j.is_structured()) {
    for (const auto& e : j) {
      if (!wellFormed(e)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("checked-in corpus matches the generator") {
  for (const auto& inst : corpus::bundled()) {
    CAPTURE(inst.name);
    CHECK(slurp(kCorpus / (inst.name + ".json")) == emitProblem(inst.file));
  }
}

TEST_CASE("shadow on INST-A") {
  const auto r = cli::run("shadow", kCorpus / "INST-A.json", {});
  REQUIRE(r.exit_code == cli::kOk);
  const auto& j = r.report;
  CHECK(j["phi0"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["dual_value"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(j["gap"].get<double>() <= 1e-7);
  REQUIRE(j["shadow_price"].size() == 2);
  CHECK(j["shadow_price"][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["shadow_price"][1][0].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(j["verification"]["all_pass"] == true);
  CHECK(j["status"] == "ok");
}

TEST_CASE("every bundled instance runs every command with exit 0") {
  for (const auto& inst : corpus::bundled()) {
    CAPTURE(inst.name);
    const auto path = kCorpus / (inst.name + ".json");
    for (const auto& cmd : cli::commands()) {
      if (cmd == "verify") continue;
      CAPTURE(cmd);
      const auto r = cli::run(cmd, path, {});
      CHECK(r.exit_code == cli::kOk);
      CHECK(wellFormed(r.report));
      CHECK(r.report["digest"].get<std::string>().size() == 16);
    }
    const auto solved = cli::run("solve", path, {});
    const auto shadow = cli::run("shadow", path, {});
    cli::RunOptions opt;
    opt.sidecar = writeFile(inst.name + ".sidecar.json",
                            json{{"x", solved.report["x"]}, {"v", shadow.report["shadow_price"]}}.dump());
    const auto v = cli::run("verify", path, opt);
    CHECK(v.exit_code == cli::kOk);
    CHECK(v.report["verification"]["all_pass"] == true);
    CHECK(v.report["dual_dp"]["optimal"] == true);
  }
}

TEST_CASE("verify rejects a pair that is not optimal") {
  cli::RunOptions opt;
  opt.sidecar = writeFile("bad.sidecar.json", R"({"x": [[3], [3]], "v": [[0], [0]]})");
  const auto r = cli::run("verify", kCorpus / "INST-A.json", opt);
  CHECK(r.exit_code == cli::kVerificationFailure);
  CHECK(r.report["verification"]["all_pass"] == false);

  opt.sidecar = writeFile("short.sidecar.json", R"({"x": [[3]], "v": [[0], [0]]})");
  CHECK(cli::run("verify", kCorpus / "INST-A.json", opt).exit_code == cli::kInvalidInput);
}

TEST_CASE("invalid files map to exit 3 with the cause in the report") {
  auto file = corpus::newsvendor();
  file.scenarios[1].probability = 0.6;
  const auto r = cli::run("validate", writeFile("badprob.json", emitProblem(file)), {});
  CHECK(r.exit_code == cli::kInvalidInput);
  CHECK(r.report["error"]["cause"] == "BadProbabilities");
  CHECK(r.report["status"] == "invalid-input");

  CHECK(cli::run("solve", writeFile("garbage.json", "[1, 2"), {}).exit_code == cli::kInvalidInput);
  CHECK(cli::run("solve", scratchDir() / "missing.json", {}).exit_code == cli::kInvalidInput);
}

TEST_CASE("infeasible and unbounded files") {
  auto file = corpus::newsvendor();
  // x <= -1 and x >= 1 in the first scenario.
  file.integrands[0].G = MatrixXd{{1.0}, {-1.0}};
  file.integrands[0].g = VectorXd::Constant(2, -1.0);
  const auto r = cli::run("solve", writeFile("infeasible.json", emitProblem(file)), {});
  CHECK(r.exit_code == cli::kInfeasible);
  CHECK(r.report["phi0"] == "inf");
  CHECK(r.report["certificate"]["ok"] == true);
  CHECK(r.report["certificate"]["farkas_value"].get<double>() <= -1e-9);
  CHECK(r.report.contains("farkas"));

  auto unb = corpus::deterministic();
  unb.integrands[0].pieces = {{VectorXd::Constant(1, 1.0), 0.0}};
  const auto u = cli::run("solve", writeFile("unbounded.json", emitProblem(unb)), {});
  CHECK(u.exit_code == cli::kUnbounded);
  CHECK(u.report["phi0"] == "-inf");
  CHECK(u.report["certificate"]["ok"] == true);
}

TEST_CASE("strict lineality turns the advisory check into a failure") {
  // h = max(x, 0) on one scenario: the recession cone is a half-line.
  auto file = corpus::deterministic();
  file.integrands[0].pieces = {{VectorXd::Constant(1, 1.0), 0.0}, {VectorXd::Zero(1), 0.0}};
  const auto path = writeFile("halfline.json", emitProblem(file));
  const auto advisory = cli::run("dp", path, {});
  CHECK(advisory.exit_code == cli::kOk);
  CHECK(advisory.report["lineality"]["linear"] == false);
  cli::RunOptions strict;
  strict.strict_lineality = true;
  CHECK(cli::run("dp", path, strict).exit_code == cli::kVerificationFailure);
}

TEST_CASE("conj evaluates the named integrand's conjugate") {
  cli::RunOptions opt;
  opt.scenario = "w2";
  opt.points = cli::parsePoints("0.5;1;2");
  const auto r = cli::run("conj", kCorpus / "INST-A.json", opt);
  REQUIRE(r.exit_code == cli::kOk);
  // |. - 2|* (v) = 2v on [-1, 1], +inf outside.
  const auto& c = r.report["conjugate"];
  CHECK(c[0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c[1]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c[2]["value"] == "inf");

  opt.points = {{1.0, 2.0}};
  CHECK(cli::run("conj", kCorpus / "INST-A.json", opt).exit_code == cli::kInvalidInput);
  opt.points.clear();
  opt.scenario = "nope";
  CHECK(cli::run("conj", kCorpus / "INST-A.json", opt).exit_code == cli::kInvalidInput);
  CHECK_THROWS(cli::parsePoints("1,x"));
}

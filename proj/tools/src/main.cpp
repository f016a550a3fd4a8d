#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace infoprice::cli;
  CLI::App app{"Shadow prices of information and dynamic programming on scenario trees"};
  app.require_subcommand(1);

  RunOptions opt;
  std::string format = "json";
  std::string points;
  std::filesystem::path problem;

  app.add_option("--tol-feas", opt.tol_feas, "LP feasibility tolerance")->capture_default_str();
  app.add_option("--tol-gap", opt.tol_gap, "Duality-gap and verification tolerance")
      ->capture_default_str();
  app.add_option("--samples", opt.samples, "Uniform samples for the subgradient inequality")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "Sampler seed")->capture_default_str();
  app.add_flag("--strict-lineality", opt.strict_lineality,
               "Fail dp/verify when the lineality condition does not hold");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json"}))->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> help{
      {"validate", "Load the problem and report its structure"},
      {"solve", "Solve the primal problem"},
      {"shadow", "Solve the dual problem and verify the shadow price"},
      {"dp", "Run the primal recursion and verify the primal solution against it"},
      {"dual-dp", "Run the dual recursion and verify the primal-dual pair against it"},
      {"verify", "Cross-check a user supplied (x, v) pair"},
      {"conj", "Evaluate an integrand's conjugate"}};
  std::string chosen;
  for (const auto& [name, text] : help) {
    auto* sub = app.add_subcommand(name, text);
    sub->add_option("problem", problem, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    if (name == "verify") {
      sub->add_option("--sidecar", opt.sidecar, "JSON file with \"x\" and \"v\", one vector per scenario")
          ->required()
          ->check(CLI::ExistingFile);
    }
    if (name == "conj") {
      sub->add_option("--scenario", opt.scenario, "Scenario id (default: the first)");
      sub->add_option("--at", points, "Points as \"1,2;3,4\" (default: the origin)");
    }
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  if (!points.empty()) {
    try {
      opt.points = parsePoints(points);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInvalidInput;
    }
  }
  const auto result = run(chosen, problem, opt);
  std::cout << result.report.dump(2) << "\n";
  return result.exit_code;
}

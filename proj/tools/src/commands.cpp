#include "commands.hpp"

#include "infoprice/dynprog.hpp"
#include "infoprice/errors.hpp"
#include "infoprice/problem_file.hpp"
#include "infoprice/shadow.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace infoprice::cli {

using json = nlohmann::ordered_json;

namespace {

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

json numbers(const VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(num(v(i)));
  return out;
}

// One flat vector per scenario, scenario order.
json process(const Process& p) {
  json out = json::array();
  for (std::size_t w = 0; w < p.numScenarios(); ++w) out.push_back(numbers(p.flatten(w)));
  return out;
}

json certificate(const lp::CertificateCheck& c, lp::LpStatus status) {
  json out;
  out["ok"] = c.ok;
  switch (status) {
    case lp::LpStatus::Optimal:
      out["primal_residual"] = num(c.primal_residual);
      out["dual_residual"] = num(c.dual_residual);
      out["gap"] = num(c.gap);
      break;
    case lp::LpStatus::Infeasible:
      out["farkas_residual"] = num(c.farkas_residual);
      out["farkas_value"] = num(c.farkas_value);
      break;
    case lp::LpStatus::Unbounded:
      out["ray_residual"] = num(c.ray_residual);
      out["ray_descent"] = num(c.ray_descent);
      break;
    case lp::LpStatus::NumericalFailure:
      break;
  }
  return out;
}

std::string digest(const ProblemFile& file) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : emitProblem(file)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int statusExit(lp::LpStatus s) {
  switch (s) {
    case lp::LpStatus::Optimal:
      return kOk;
    case lp::LpStatus::Infeasible:
      return kInfeasible;
    case lp::LpStatus::Unbounded:
      return kUnbounded;
    case lp::LpStatus::NumericalFailure:
      return kNumericalFailure;
  }
  return kNumericalFailure;
}

int errorExit(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LpNumericalFailure:
    case ErrorKind::SampleEvaluationFailure:
      return kNumericalFailure;
    case ErrorKind::ImproperRecursion:
    case ErrorKind::ImproperFunction:
    case ErrorKind::Unattained:
      return kVerificationFailure;
    default:
      return kInvalidInput;
  }
}

struct Context {
  const RunOptions& opt;
  const StochasticProgram& program;
  lp::LpTolerances lp;
  json& report;
};

// Solves the primal and records it; returns false (with exit code set) when
// phi(0) is not finite.
bool primalOrExit(Context& c, PrimalReport& primal, int& exit_code) {
  primal = solvePrimal(c.program, c.lp);
  c.report["primal_status"] = std::string(lp::to_string(primal.status));
  c.report["phi0"] = num(primal.value);
  if (primal.status != lp::LpStatus::Optimal) {
    c.report["certificate"] = certificate(primal.certificate, primal.status);
    exit_code = statusExit(primal.status);
    return false;
  }
  return true;
}

int cmdValidate(Context& c) {
  const auto& space = c.program.space();
  json parts = json::array();
  for (std::size_t t = 0; t < space.numStages(); ++t) parts.push_back(space.partition(t).numAtoms());
  c.report["stages"] = c.program.numStages();
  c.report["dims"] = c.program.stageDims();
  c.report["scenarios"] = space.numScenarios();
  c.report["atoms"] = parts;
  json integrands = json::array();
  for (std::size_t w = 0; w < c.program.numScenarios(); ++w) {
    const auto& h = c.program.integrand(w);
    std::string proper;
    switch (checkProper(h, c.lp)) {
      case Properness::Proper:
        proper = "proper";
        break;
      case Properness::EmptyDomain:
        proper = "empty-domain";
        break;
      case Properness::MinusInfinity:
        proper = "minus-infinity";
        break;
    }
    integrands.push_back({{"scenario", space.scenarios()[w].id},
                          {"aux", h.auxDim()},
                          {"inequalities", h.numInequalities()},
                          {"equalities", h.numEqualities()},
                          {"properness", proper}});
  }
  c.report["integrands"] = integrands;
  return kOk;
}

int cmdSolve(Context& c) {
  PrimalReport primal;
  int code = kOk;
  const bool ok = primalOrExit(c, primal, code);
  if (primal.status == lp::LpStatus::Unbounded) c.report["ray"] = numbers(primal.lp.ray);
  if (primal.status == lp::LpStatus::Infeasible) {
    c.report["farkas"] = {{"u", numbers(primal.lp.farkas_u)}, {"z", numbers(primal.lp.farkas_z)}};
  }
  if (!ok) return code;
  c.report["x"] = process(primal.x);
  c.report["scenario_values"] = numbers(primal.scenario_values);
  c.report["iterations"] = primal.lp.iterations;
  c.report["certificate"] = certificate(primal.certificate, primal.status);
  return primal.certificate.ok ? kOk : kVerificationFailure;
}

json shadowJson(const ShadowCertificate& s) {
  return {{"adapted", s.adapted},
          {"in_annihilator", s.in_annihilator},
          {"annihilator_residual", num(s.annihilator_residual)},
          {"primal_value", num(s.primal_value)},
          {"fenchel_residuals", numbers(s.fenchel_residuals)},
          {"dual_value", num(s.dual_value)},
          {"value_sum", num(s.value_sum)},
          {"all_pass", s.all_pass}};
}

int cmdShadow(Context& c) {
  PrimalReport primal;
  int code = kOk;
  if (!primalOrExit(c, primal, code)) return code;
  const auto dual = solveDual(c.program, c.lp);
  c.report["dual_status"] = std::string(lp::to_string(dual.status));
  c.report["dual_value"] = num(dual.value);
  if (dual.status != lp::LpStatus::Optimal) {
    std::cerr << "dual LP returned " << lp::to_string(dual.status) << "\n";
    return dual.status == lp::LpStatus::NumericalFailure ? kNumericalFailure : kVerificationFailure;
  }
  c.report["shadow_price"] = process(dual.v);
  c.report["gap"] = num(dual.gap);
  const auto cert = verifyShadowPrice(c.program, primal.x, dual.v, c.opt.tol_gap, c.lp);
  c.report["verification"] = shadowJson(cert);
  SamplerConfig cfg;
  cfg.samples = c.opt.samples;
  cfg.seed = c.opt.seed;
  const auto sample = subgradientInequalitySample(c.program, dual.v, cfg, c.lp);
  c.report["subgradient_sample"] = {{"samples", sample.evaluated},
                                    {"infinite", sample.infinite},
                                    {"worst_margin", num(sample.worst_margin)},
                                    {"holds", sample.holds}};
  const bool ok = dual.gap <= c.opt.tol_gap && cert.all_pass && sample.holds;
  return ok ? kOk : kVerificationFailure;
}

// Advisory by default; returns false when strict mode rejects the program.
bool lineality(Context& c) {
  const auto lin = linealityCheck(c.program, c.lp);
  c.report["lineality"] = {{"linear", lin.linear},
                           {"rows", lin.rows},
                           {"strict_rows", lin.strict_rows},
                           {"witness", lin.witness.numScenarios() > 0 ? process(lin.witness) : json::array()},
                           {"detail", lin.detail}};
  if (lin.linear) return true;
  std::cerr << "warning: the lineality condition does not hold"
            << (lin.detail.empty() ? "" : " (" + lin.detail + ")") << "\n";
  return !c.opt.strict_lineality;
}

json primalDpJson(const PrimalDpReport& r) {
  json argmin = json::array();
  for (const auto& row : r.argmin) argmin.push_back(numbers(row));
  return {{"adapted", r.adapted},
          {"phi0", num(r.phi0)},
          {"recursion_value", num(r.recursion_value)},
          {"stage_values", numbers(r.stage_values)},
          {"margins", numbers(r.margins)},
          {"argmin_residuals", argmin},
          {"inequalities_hold", r.inequalities_hold},
          {"optimal", r.optimal}};
}

json dualDpJson(const DualDpReport& r) {
  json res = json::array();
  for (const auto& row : r.residuals) res.push_back(numbers(row));
  return {{"adapted", r.adapted},
          {"in_annihilator", r.in_annihilator},
          {"premise", r.premise},
          {"phi0", num(r.phi0)},
          {"recursion_value", num(r.recursion_value)},
          {"stage_values", numbers(r.stage_values)},
          {"margins", numbers(r.margins)},
          {"fenchel_sums", numbers(r.fenchel_sums)},
          {"fenchel_residuals", res},
          {"inequalities_hold", r.inequalities_hold},
          {"optimal", r.optimal}};
}

int cmdDp(Context& c) {
  if (!lineality(c)) return kVerificationFailure;
  PrimalReport primal;
  int code = kOk;
  if (!primalOrExit(c, primal, code)) return code;
  const auto table = primalRecursion(c.program, c.lp);
  const auto r = verifyPrimalDP(c.program, table, primal.x, c.opt.tol_gap, c.lp);
  c.report["x"] = process(primal.x);
  c.report["primal_dp"] = primalDpJson(r);
  return r.optimal ? kOk : kVerificationFailure;
}

int cmdDualDp(Context& c) {
  PrimalReport primal;
  int code = kOk;
  if (!primalOrExit(c, primal, code)) return code;
  const auto dual = solveDual(c.program, c.lp);
  if (dual.status != lp::LpStatus::Optimal) {
    c.report["dual_status"] = std::string(lp::to_string(dual.status));
    return dual.status == lp::LpStatus::NumericalFailure ? kNumericalFailure : kVerificationFailure;
  }
  const auto table = dualRecursion(c.program, c.lp);
  const auto r = verifyDualDP(c.program, table, primal.x, dual.v, c.opt.tol_gap, c.lp);
  c.report["x"] = process(primal.x);
  c.report["shadow_price"] = process(dual.v);
  c.report["dual_dp"] = dualDpJson(r);
  return r.optimal ? kOk : kVerificationFailure;
}

Process readProcess(const json& j, const StochasticProgram& program, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != program.numScenarios()) {
    throw Error(ErrorKind::ParseError, "sidecar: '" + key + "' must hold one vector per scenario");
  }
  ScenarioVectors flat;
  for (std::size_t w = 0; w < program.numScenarios(); ++w) {
    const auto& row = j[key][w];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(program.totalDim())) {
      throw Error(ErrorKind::ParseError, "sidecar: " + key + "[" + std::to_string(w) + "] must have length " +
                                             std::to_string(program.totalDim()));
    }
    VectorXd v(program.totalDim());
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i].is_number()) {
        throw Error(ErrorKind::ParseError, "sidecar: " + key + " entries must be numbers");
      }
      v(static_cast<Eigen::Index>(i)) = row[i].get<double>();
    }
    flat.push_back(v);
  }
  return Process::fromFlat(program.stageDims(), flat);
}

int cmdVerify(Context& c) {
  if (c.opt.sidecar.empty()) throw Error(ErrorKind::ParseError, "verify needs --sidecar");
  std::ifstream in(c.opt.sidecar);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + c.opt.sidecar.string() + "'");
  json side;
  try {
    side = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("sidecar: ") + e.what());
  }
  const auto x = readProcess(side, c.program, "x");
  const auto v = readProcess(side, c.program, "v");
  const auto cert = verifyShadowPrice(c.program, x, v, c.opt.tol_gap, c.lp);
  c.report["verification"] = shadowJson(cert);
  bool ok = cert.all_pass;
  if (lineality(c)) {
    const auto table = primalRecursion(c.program, c.lp);
    const auto p = verifyPrimalDP(c.program, table, x, c.opt.tol_gap, c.lp);
    c.report["primal_dp"] = primalDpJson(p);
    ok = ok && p.optimal;
  }
  const auto table = dualRecursion(c.program, c.lp);
  const auto d = verifyDualDP(c.program, table, x, v, c.opt.tol_gap, c.lp);
  c.report["dual_dp"] = dualDpJson(d);
  ok = ok && d.optimal;
  c.report["phi0"] = num(d.phi0);
  return ok ? kOk : kVerificationFailure;
}

int cmdConj(Context& c) {
  const auto& space = c.program.space();
  const std::size_t w = c.opt.scenario.empty() ? 0 : space.indexOf(c.opt.scenario);
  const auto f = conjugate(c.program.integrand(w));
  auto points = c.opt.points;
  if (points.empty()) points.emplace_back(static_cast<std::size_t>(c.program.totalDim()), 0.0);
  json values = json::array();
  for (const auto& p : points) {
    if (p.size() != static_cast<std::size_t>(c.program.totalDim())) {
      throw Error(ErrorKind::DimensionMismatch, "conj: points must have length " +
                                                    std::to_string(c.program.totalDim()));
    }
    const VectorXd v = Eigen::Map<const VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    values.push_back({{"at", numbers(v)}, {"value", num(evaluate(f, v, c.lp))}});
  }
  c.report["scenario"] = space.scenarios()[w].id;
  c.report["conjugate"] = values;
  return kOk;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"validate", "solve",  "shadow", "dp",
                                              "dual-dp",  "verify", "conj"};
  return names;
}

std::vector<std::vector<double>> parsePoints(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::stringstream all(text);
  std::string point;
  while (std::getline(all, point, ';')) {
    std::vector<double> coords;
    std::stringstream ps(point);
    std::string coord;
    while (std::getline(ps, coord, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(coord, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || coord.find_first_not_of(" \t", used) != std::string::npos) {
        throw Error(ErrorKind::ParseError, "cannot parse coordinate '" + coord + "'");
      }
      coords.push_back(v);
    }
    out.push_back(std::move(coords));
  }
  return out;
}

RunResult run(const std::string& command, const std::filesystem::path& problem,
              const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  json& report = result.report;
  report["command"] = command;
  report["instance"] = problem.string();

  try {
    const auto file = loadProblem(problem);
    report["digest"] = digest(file);
    const auto program = toProgram(file);
    json ids = json::array();
    for (const auto& s : program.space().scenarios()) ids.push_back(s.id);
    report["scenario_ids"] = ids;

    lp::LpTolerances tol;
    tol.feasibility = options.tol_feas;
    tol.gap = options.tol_gap;
    Context c{options, program, tol, report};
    if (command == "validate") {
      result.exit_code = cmdValidate(c);
    } else if (command == "solve") {
      result.exit_code = cmdSolve(c);
    } else if (command == "shadow") {
      result.exit_code = cmdShadow(c);
    } else if (command == "dp") {
      result.exit_code = cmdDp(c);
    } else if (command == "dual-dp") {
      result.exit_code = cmdDualDp(c);
    } else if (command == "verify") {
      result.exit_code = cmdVerify(c);
    } else if (command == "conj") {
      result.exit_code = cmdConj(c);
    } else {
      throw Error(ErrorKind::ParseError, "unknown command '" + command + "'");
    }
  } catch (const ValidationError& e) {
    result.exit_code = kInvalidInput;
    report["error"] = {{"kind", std::string(to_string(e.kind()))},
                       {"cause", std::string(to_string(e.cause()))},
                       {"location", e.location()},
                       {"message", e.what()}};
  } catch (const Error& e) {
    result.exit_code = errorExit(e.kind());
    report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  } catch (const std::exception& e) {
    result.exit_code = kNumericalFailure;
    report["error"] = {{"kind", "Internal"}, {"message", e.what()}};
  }
  if (report.contains("error")) std::cerr << "error: " << report["error"]["message"].get<std::string>() << "\n";

  static constexpr const char* kStatus[] = {"ok", "infeasible", "unbounded", "invalid-input",
                                            "verification-failure", "numerical-failure"};
  report["status"] = kStatus[result.exit_code];
  report["exit_code"] = result.exit_code;
  report["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace infoprice::cli

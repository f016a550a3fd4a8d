#include "infoprice/shadow.hpp"

#include "infoprice/errors.hpp"

#include "extended.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace infoprice {

namespace {

using detail::extendedSum;
using detail::kInf;

// u -> sum_omega p(omega) h(M_omega u + z(omega), omega) over the adapted layout.
PolyFun shiftedObjective(const StochasticProgram& program, const AdaptedLayout& layout,
                         const Process* z) {
  const auto& space = program.space();
  std::vector<double> weights;
  std::vector<PolyFun> terms;
  for (std::size_t w = 0; w < program.numScenarios(); ++w) {
    const VectorXd shift = z ? z->flatten(w) : VectorXd::Zero(program.totalDim());
    terms.push_back(affineCompose(program.integrand(w), layout.scenarioMap(w), shift));
    weights.push_back(space.probability(w));
  }
  return weightedSum(weights, terms);
}

}  // namespace

PrimalReport solvePrimal(const StochasticProgram& program, const lp::LpTolerances& tol) {
  const AdaptedLayout layout(program.space(), program.stageDims());
  const auto objective = shiftedObjective(program, layout, nullptr);
  auto min = minimize(objective, tol);

  PrimalReport report;
  report.status = min.status;
  report.lp = min.lp;
  report.certificate = lp::checkCertificate(min.problem, min.lp, tol);
  report.value = min.value;
  if (min.status == lp::LpStatus::Optimal) {
    report.x = layout.toProcess(min.argmin);
    for (std::size_t w = 0; w < program.numScenarios(); ++w) {
      report.scenario_values.push_back(evaluate(program.integrand(w), report.x.flatten(w), tol));
    }
  } else if (min.status == lp::LpStatus::Unbounded) {
    report.x = layout.toProcess(min.argmin);
  }
  return report;
}

double valueFunction(const StochasticProgram& program, const Process& z,
                     const lp::LpTolerances& tol) {
  if (z.stageDims() != program.stageDims() || z.numScenarios() != program.numScenarios()) {
    throw Error(ErrorKind::DimensionMismatch, "valueFunction: z does not match the program");
  }
  const AdaptedLayout layout(program.space(), program.stageDims());
  const auto min = minimize(shiftedObjective(program, layout, &z), tol);
  if (min.status == lp::LpStatus::NumericalFailure) {
    throw Error(ErrorKind::LpNumericalFailure, "valueFunction: LP numerical failure");
  }
  return min.value;
}

DualReport solveDual(const StochasticProgram& program, const lp::LpTolerances& tol) {
  const auto& space = program.space();
  const ScenarioLayout layout(program.numScenarios(), program.stageDims());
  std::vector<double> weights;
  std::vector<PolyFun> terms;
  for (std::size_t w = 0; w < program.numScenarios(); ++w) {
    terms.push_back(
        affineCompose(conjugate(program.integrand(w)), layout.scenarioMap(w),
                      VectorXd::Zero(program.totalDim())));
    weights.push_back(space.probability(w));
  }
  const MatrixXd R = annihilatorRows(space, program.stageDims());
  const auto nperp = indicator(MatrixXd(0, layout.size()), VectorXd(0), R, VectorXd::Zero(R.rows()));
  const auto objective = sum(weightedSum(weights, terms), nperp);
  auto min = minimize(objective, tol);

  DualReport report;
  report.status = min.status;
  report.lp = min.lp;
  report.certificate = lp::checkCertificate(min.problem, min.lp, tol);
  report.value = min.value;
  if (min.status == lp::LpStatus::Optimal) {
    report.v = layout.toProcess(min.argmin);
    report.annihilator_residual = inAnnihilator(space, report.v).residual;
  }
  const auto primal = solvePrimal(program, tol);
  report.primal_status = primal.status;
  report.phi0 = primal.value;
  if (std::isfinite(report.phi0) && std::isfinite(report.value)) {
    report.gap = std::abs(report.phi0 + report.value);
  } else {
    report.gap = kInf;
  }
  return report;
}

double expectedValue(const StochasticProgram& program, const Process& x,
                     const lp::LpTolerances& tol) {
  double total = 0.0;
  for (std::size_t w = 0; w < program.numScenarios(); ++w) {
    const double hx = evaluate(program.integrand(w), x.flatten(w), tol);
    total = extendedSum(total, program.space().probability(w) * hx);
  }
  return total;
}

double expectedConjugate(const StochasticProgram& program, const Process& v,
                         const lp::LpTolerances& tol) {
  double total = 0.0;
  for (std::size_t w = 0; w < program.numScenarios(); ++w) {
    const double hv = evaluate(conjugate(program.integrand(w)), v.flatten(w), tol);
    total = extendedSum(total, program.space().probability(w) * hv);
  }
  return total;
}

ShadowCertificate verifyShadowPrice(const StochasticProgram& program, const Process& x,
                                    const Process& v, double tol,
                                    const lp::LpTolerances& lp_tol) {
  const auto& space = program.space();
  ShadowCertificate c;
  c.adapted = isAdapted(space, x, tol);
  const auto ann = inAnnihilator(space, v, tol);
  c.in_annihilator = ann.member;
  c.annihilator_residual = ann.residual;

  c.fenchel_ok = true;
  double eh = 0.0, ehc = 0.0;
  for (std::size_t w = 0; w < program.numScenarios(); ++w) {
    const auto xw = x.flatten(w);
    const auto vw = v.flatten(w);
    const double hx = evaluate(program.integrand(w), xw, lp_tol);
    const double hc = evaluate(conjugate(program.integrand(w)), vw, lp_tol);
    const double residual = (std::isfinite(hx) && std::isfinite(hc)) ? hx + hc - xw.dot(vw) : kInf;
    c.fenchel_residuals.push_back(residual);
    if (!(std::abs(residual) <= tol)) c.fenchel_ok = false;
    eh = extendedSum(eh, space.probability(w) * hx);
    ehc = extendedSum(ehc, space.probability(w) * hc);
  }
  c.primal_value = eh;
  c.primal_finite = std::isfinite(eh);
  c.dual_value = ehc;
  c.value_sum = (std::isfinite(eh) && std::isfinite(ehc)) ? eh + ehc : kInf;
  c.sum_ok = c.value_sum <= tol;
  c.all_pass = c.adapted && c.in_annihilator && c.primal_finite && c.fenchel_ok && c.sum_ok;
  return c;
}

SubgradientSampleReport subgradientInequalitySample(const StochasticProgram& program,
                                                    const Process& v,
                                                    const SamplerConfig& config,
                                                    const lp::LpTolerances& tol) {
  const auto& space = program.space();
  SubgradientSampleReport report;
  const auto primal = solvePrimal(program, tol);
  if (primal.status != lp::LpStatus::Optimal) {
    throw Error(ErrorKind::SampleEvaluationFailure,
                "subgradientInequalitySample: phi(0) is not finite (" +
                    std::string(lp::to_string(primal.status)) + ")");
  }
  report.phi0 = primal.value;

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> coord(-config.radius, config.radius);
  auto randomProcess = [&] {
    Process z(program.stageDims(), program.numScenarios());
    for (std::size_t t = 0; t < program.numStages(); ++t) {
      for (std::size_t w = 0; w < program.numScenarios(); ++w) {
        for (int k = 0; k < program.stageDims()[t]; ++k) z.at(t, w)(k) = coord(rng);
      }
    }
    return z;
  };

  std::vector<Process> samples;
  samples.emplace_back(program.stageDims(), program.numScenarios());
  samples.push_back(adaptedProjection(space, randomProcess()));
  for (int i = 0; i < config.samples; ++i) samples.push_back(randomProcess());

  report.worst_margin = kInf;
  for (const auto& z : samples) {
    double phi = 0.0;
    try {
      phi = valueFunction(program, z, tol);
    } catch (const Error& e) {
      throw Error(ErrorKind::SampleEvaluationFailure,
                  std::string("subgradientInequalitySample: ") + e.what());
    }
    double margin = kInf;
    if (std::isinf(phi) && phi > 0) {
      ++report.infinite;
    } else {
      margin = phi - report.phi0 - pairing(space, z, v);
    }
    report.margins.push_back(margin);
    report.worst_margin = std::min(report.worst_margin, margin);
    ++report.evaluated;
  }
  report.holds = report.worst_margin >= -config.tol;
  return report;
}

}  // namespace infoprice

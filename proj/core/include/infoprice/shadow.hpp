#pragma once

#include "infoprice/program.hpp"

#include <cstdint>
#include <vector>

namespace infoprice {

struct PrimalReport {
  lp::LpStatus status = lp::LpStatus::NumericalFailure;
  Process x;                            // optimal adapted strategy
  double value = 0.0;                   // phi(0); +inf infeasible, -inf unbounded
  std::vector<double> scenario_values;  // h(x(omega), omega)
  lp::LpSolution lp;                    // carries the Farkas certificate or ray
  lp::CertificateCheck certificate;
};

/// phi(0) = inf { E h(x) : x adapted }, assembled as one LP with one block of
/// decision variables per filtration atom.
PrimalReport solvePrimal(const StochasticProgram& program, const lp::LpTolerances& tol = {});

/// phi(z) = inf { E h(x + z) : x adapted }. Throws LpNumericalFailure.
double valueFunction(const StochasticProgram& program, const Process& z,
                     const lp::LpTolerances& tol = {});

struct DualReport {
  lp::LpStatus status = lp::LpStatus::NumericalFailure;
  Process v;                         // shadow price of information
  double value = 0.0;                // min E h*(v) over the annihilator
  double annihilator_residual = 0.0;
  lp::LpStatus primal_status = lp::LpStatus::NumericalFailure;
  double phi0 = 0.0;
  double gap = 0.0;                  // |phi(0) + value| when both are finite
  lp::LpSolution lp;
  lp::CertificateCheck certificate;
};

/// min E h*(v) subject to E_t v_t = 0 on every atom, as one LP over v and
/// the conjugate auxiliaries. Also solves the primal to report the gap.
DualReport solveDual(const StochasticProgram& program, const lp::LpTolerances& tol = {});

struct ShadowCertificate {
  bool adapted = false;
  bool in_annihilator = false;
  double annihilator_residual = 0.0;
  double primal_value = 0.0;  // E h(x)
  bool primal_finite = false;
  std::vector<double> fenchel_residuals;  // h(x) + h*(v) - x·v per scenario
  bool fenchel_ok = false;
  double dual_value = 0.0;  // E h*(v)
  double value_sum = 0.0;   // E h(x) + E h*(v)
  bool sum_ok = false;
  bool all_pass = false;
};

/// Checks that x is optimal and v is a shadow price of information.
ShadowCertificate verifyShadowPrice(const StochasticProgram& program, const Process& x,
                                    const Process& v, double tol = 1e-7,
                                    const lp::LpTolerances& lp_tol = {});

struct SamplerConfig {
  int samples = 50;
  double radius = 3.0;
  std::uint64_t seed = 20240613;
  double tol = 1e-6;
};

struct SubgradientSampleReport {
  double phi0 = 0.0;
  double worst_margin = 0.0;  // min over samples of phi(z) - phi(0) - <z, v>
  int evaluated = 0;
  int infinite = 0;  // samples with phi(z) = +inf (margin +inf)
  bool holds = false;
  std::vector<double> margins;
};

/// Samples z (zero, one adapted, then `samples` uniform in [-r, r]) and
/// checks phi(z) >= phi(0) + <z, v>. Throws SampleEvaluationFailure.
SubgradientSampleReport subgradientInequalitySample(const StochasticProgram& program,
                                                    const Process& v,
                                                    const SamplerConfig& config = {},
                                                    const lp::LpTolerances& tol = {});

/// E h(x) and E h*(v), evaluated scenario by scenario.
double expectedValue(const StochasticProgram& program, const Process& x,
                     const lp::LpTolerances& tol = {});
double expectedConjugate(const StochasticProgram& program, const Process& v,
                         const lp::LpTolerances& tol = {});

}  // namespace infoprice

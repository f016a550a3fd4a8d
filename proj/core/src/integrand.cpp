#include "infoprice/integrand.hpp"

#include "infoprice/errors.hpp"
#include "infoprice/shadow.hpp"

#include "extended.hpp"

#include <algorithm>
#include <cmath>

namespace infoprice {

namespace {

using detail::extendedSum;
using detail::kInf;

void requirePartition(const IntegrandFamily& family, const Partition& G, const char* op) {
  if (G.numScenarios() != family.numScenarios()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": partition covers " +
                                                  std::to_string(G.numScenarios()) +
                                                  " scenarios, family has " +
                                                  std::to_string(family.numScenarios()));
  }
}

MatrixXd selector(Eigen::Index block, Eigen::Index n, Eigen::Index total) {
  MatrixXd S = MatrixXd::Zero(n, total);
  S.middleCols(block * n, n) = MatrixXd::Identity(n, n);
  return S;
}

// min sum_i q_i [f_i*(w_i) - x_i.w_i] subject to R w = r over stacked w_i.
// Adding sum_i q_i f_i(x_i) to the optimum gives the Fenchel gap of the best
// selection, which is zero exactly when every w_i is a subgradient at x_i.
Minimization selectionProblem(const std::vector<PolyFun>& fs, const std::vector<double>& q,
                              const ScenarioVectors& xs, const MatrixXd& R, const VectorXd& r,
                              const lp::LpTolerances& tol) {
  const auto n = fs.front().dim();
  const auto total = static_cast<Eigen::Index>(fs.size()) * n;
  std::vector<PolyFun> terms;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    terms.push_back(affineCompose(addLinear(conjugate(fs[i]), xs[i]),
                                  selector(static_cast<Eigen::Index>(i), n, total),
                                  VectorXd::Zero(n)));
  }
  const auto link = indicator(MatrixXd(0, total), VectorXd(0), R, r);
  return minimize(sum(weightedSum(q, terms), link), tol);
}

double extendedDifference(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b);
}

}  // namespace

IntegrandFamily::IntegrandFamily(FilteredSpace space, std::vector<PolyFun> functions)
    : space_(std::move(space)), f_(std::move(functions)) {
  if (f_.size() != space_.numScenarios() || f_.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "IntegrandFamily: one function per scenario required");
  }
  for (const auto& f : f_) {
    if (f.dim() != f_.front().dim()) {
      throw Error(ErrorKind::DimensionMismatch, "IntegrandFamily: functions differ in dimension");
    }
  }
}

IntegrandFamily::IntegrandFamily(const StochasticProgram& program)
    : IntegrandFamily(program.space(), program.integrands()) {}

std::vector<PolyFun> condExpIntegrand(const IntegrandFamily& family, const Partition& G) {
  requirePartition(family, G, "condExpIntegrand");
  std::vector<PolyFun> out;
  for (std::size_t k = 0; k < G.numAtoms(); ++k) {
    out.push_back(expectationFamily(family.space(), G, k, family.functions()));
  }
  return out;
}

std::vector<PolyFun> epiCondExp(const IntegrandFamily& family, const Partition& G,
                                const lp::LpTolerances& tol) {
  requirePartition(family, G, "epiCondExp");
  std::vector<PolyFun> star;
  for (std::size_t w = 0; w < family.numScenarios(); ++w) {
    if (checkProper(family.at(w), tol) != Properness::Proper) {
      throw Error(ErrorKind::ImproperFunction,
                  "epiCondExp: g(., " + family.space().scenarios()[w].id + ") is not proper");
    }
    star.push_back(conjugate(family.at(w)));
  }
  const IntegrandFamily dual(family.space(), std::move(star));
  std::vector<PolyFun> out;
  for (const auto& f : condExpIntegrand(dual, G)) out.push_back(conjugate(f));
  return out;
}

JensenReport jensenCheck(const IntegrandFamily& family, const ScenarioVectors& v, const Partition& G,
                         double tol, const lp::LpTolerances& lp_tol) {
  requirePartition(family, G, "jensenCheck");
  const auto& space = family.space();
  const auto mean = condExp(space, G, v);
  const auto atoms = condExpIntegrand(family, G);
  JensenReport report;
  report.holds = true;
  for (std::size_t k = 0; k < G.numAtoms(); ++k) {
    const double pa = space.atomProbability(G, k);
    JensenAtom a;
    a.left = evaluate(conjugate(atoms[k]), mean[G.atom(k).front()], lp_tol);
    a.right = 0.0;
    for (auto w : G.atom(k)) {
      const double fv = evaluate(conjugate(family.at(w)), v[w], lp_tol);
      a.right = extendedSum(a.right, space.probability(w) / pa * fv);
    }
    a.margin = std::isinf(a.right) && a.right > 0 ? kInf : a.right - a.left;
    a.holds = !(a.left > a.right + tol);
    report.holds = report.holds && a.holds;
    report.atoms.push_back(a);
  }
  return report;
}

ConjugateOnN conjugateOnN(const StochasticProgram& program, const Process& xstar,
                          const lp::LpTolerances& tol) {
  const auto& space = program.space();
  if (!isAdapted(space, xstar)) {
    throw Error(ErrorKind::ValidationError, "conjugateOnN: x* is not adapted");
  }
  const ScenarioLayout layout(program.numScenarios(), program.stageDims());
  std::vector<double> weights;
  std::vector<PolyFun> terms;
  for (std::size_t w = 0; w < program.numScenarios(); ++w) {
    terms.push_back(affineCompose(conjugate(program.integrand(w)), layout.scenarioMap(w),
                                  xstar.flatten(w)));
    weights.push_back(space.probability(w));
  }
  const MatrixXd R = annihilatorRows(space, program.stageDims());
  const auto nperp = indicator(MatrixXd(0, layout.size()), VectorXd(0), R, VectorXd::Zero(R.rows()));
  const auto min = minimize(sum(weightedSum(weights, terms), nperp), tol);
  if (min.status != lp::LpStatus::Optimal) {
    throw Error(ErrorKind::Unattained, "conjugateOnN: the infimum over the annihilator is not attained (" +
                                           std::string(lp::to_string(min.status)) + ")");
  }

  ConjugateOnN out;
  out.value = min.value;
  out.v = layout.toProcess(min.argmin);

  std::vector<PolyFun> tilted;
  for (std::size_t w = 0; w < program.numScenarios(); ++w) {
    tilted.push_back(addLinear(program.integrand(w), xstar.flatten(w)));
  }
  const StochasticProgram shifted(space, program.stageDims(), std::move(tilted));
  const auto primal = solvePrimal(shifted, tol);
  if (primal.status == lp::LpStatus::NumericalFailure) {
    throw Error(ErrorKind::LpNumericalFailure, "conjugateOnN: direct LP failed");
  }
  out.direct = -primal.value;
  out.discrepancy = extendedDifference(out.value, out.direct);
  out.agree = out.discrepancy <= 1e-7 * std::max(1.0, std::abs(out.value));
  return out;
}

SubdiffMembership subdiffOnN(const StochasticProgram& program, const Process& x,
                             const Process& xstar, double tol, const lp::LpTolerances& lp_tol) {
  const auto& space = program.space();
  SubdiffMembership out;
  if (!isAdapted(space, x) || !isAdapted(space, xstar)) {
    out.detail = "x and x* must be adapted";
    return out;
  }
  const std::size_t N = program.numScenarios();
  std::vector<PolyFun> fs;
  std::vector<double> q;
  ScenarioVectors xs;
  double efx = 0.0;
  for (std::size_t w = 0; w < N; ++w) {
    fs.push_back(program.integrand(w));
    q.push_back(space.probability(w));
    xs.push_back(x.flatten(w));
    efx = extendedSum(efx, q.back() * evaluate(fs.back(), xs.back(), lp_tol));
  }
  if (!std::isfinite(efx)) {
    out.detail = "E f(x) is not finite";
    return out;
  }
  const ScenarioLayout layout(N, program.stageDims());
  const MatrixXd R = annihilatorRows(space, program.stageDims());
  const VectorXd r = R * layout.fromProcess(xstar);
  const auto min = selectionProblem(fs, q, xs, R, r, lp_tol);
  if (min.status == lp::LpStatus::Infeasible) {
    out.objective = kInf;
    out.detail = "no selection has this adapted projection";
    return out;
  }
  if (min.status != lp::LpStatus::Optimal) {
    throw Error(ErrorKind::LpNumericalFailure,
                "subdiffOnN: selection LP returned " + std::string(lp::to_string(min.status)));
  }
  out.objective = min.value + efx;
  out.witness = layout.toProcess(min.argmin);
  out.member = out.objective <= tol;
  if (!out.member) out.detail = "best selection leaves a Fenchel gap";
  return out;
}

Thm5Report thm5Verify(const IntegrandFamily& family, const ScenarioVectors& xstar,
                      const Partition& G, double tol, const lp::LpTolerances& lp_tol) {
  requirePartition(family, G, "thm5Verify");
  if (!isMeasurable(G, xstar)) {
    throw Error(ErrorKind::ValidationError, "thm5Verify: x* is not measurable for the partition");
  }
  const auto& space = family.space();
  const auto n = family.dim();
  const auto atoms = condExpIntegrand(family, G);
  Thm5Report report;
  report.v.assign(family.numScenarios(), VectorXd::Zero(n));
  for (std::size_t k = 0; k < G.numAtoms(); ++k) {
    const auto& members = G.atom(k);
    const double pa = space.atomProbability(G, k);
    const VectorXd xa = xstar[members.front()];
    const auto total = static_cast<Eigen::Index>(members.size()) * n;
    std::vector<PolyFun> terms;
    std::vector<double> q;
    MatrixXd R = MatrixXd::Zero(n, total);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto w = members[i];
      q.push_back(space.probability(w) / pa);
      terms.push_back(affineCompose(conjugate(family.at(w)),
                                    selector(static_cast<Eigen::Index>(i), n, total), xa));
      R.middleCols(static_cast<Eigen::Index>(i) * n, n) = q.back() * MatrixXd::Identity(n, n);
    }
    const auto link = indicator(MatrixXd(0, total), VectorXd(0), R, VectorXd::Zero(n));
    const auto min = minimize(sum(weightedSum(q, terms), link), lp_tol);
    if (min.status != lp::LpStatus::Optimal) {
      throw Error(ErrorKind::Unattained, "thm5Verify: atom " + std::to_string(k) + " returned " +
                                             std::string(lp::to_string(min.status)));
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      report.v[members[i]] = min.argmin.segment(static_cast<Eigen::Index>(i) * n, n);
    }
    Thm5Atom a;
    a.value = min.value;
    a.direct = evaluate(conjugate(atoms[k]), xa, lp_tol);
    a.error = extendedDifference(a.value, a.direct);
    report.max_error = std::max(report.max_error, a.error);
    report.atoms.push_back(a);
  }
  report.holds = report.max_error <= tol;
  return report;
}

CondExpSubdiffMap::CondExpSubdiffMap(const IntegrandFamily& family, ScenarioVectors x,
                                     const Partition& G, double tol,
                                     const lp::LpTolerances& lp_tol)
    : family_(family), x_(std::move(x)), G_(G), tol_(tol), lp_tol_(lp_tol) {
  requirePartition(family_, G_, "CondExpSubdiffMap");
  if (x_.size() != family_.numScenarios() || !isMeasurable(G_, x_)) {
    throw Error(ErrorKind::ValidationError,
                "CondExpSubdiffMap: x must be one point per scenario, measurable for the partition");
  }
  for (std::size_t w = 0; w < family_.numScenarios(); ++w) {
    fx_.push_back(evaluate(family_.at(w), x_[w], lp_tol_));
    if (!std::isfinite(fx_.back())) {
      throw Error(ErrorKind::EmptySubdifferential,
                  "x is outside the domain of f(., " + family_.space().scenarios()[w].id + ")");
    }
  }
  atom_fun_ = condExpIntegrand(family_, G_);
}

SubdiffMembership CondExpSubdiffMap::contains(std::size_t atom, const VectorXd& u) const {
  const auto& space = family_.space();
  const auto& members = G_.atom(atom);
  const double pa = space.atomProbability(G_, atom);
  const auto n = family_.dim();
  std::vector<PolyFun> fs;
  std::vector<double> q;
  ScenarioVectors xs;
  double efx = 0.0;
  MatrixXd R = MatrixXd::Zero(n, static_cast<Eigen::Index>(members.size()) * n);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto w = members[i];
    fs.push_back(family_.at(w));
    q.push_back(space.probability(w) / pa);
    xs.push_back(x_[w]);
    efx += q.back() * fx_[w];
    R.middleCols(static_cast<Eigen::Index>(i) * n, n) = q.back() * MatrixXd::Identity(n, n);
  }
  SubdiffMembership out;
  const auto min = selectionProblem(fs, q, xs, R, u, lp_tol_);
  if (min.status == lp::LpStatus::Infeasible) {
    out.objective = kInf;
    out.detail = "no selection has this conditional mean";
    return out;
  }
  if (min.status != lp::LpStatus::Optimal) {
    throw Error(ErrorKind::LpNumericalFailure,
                "CondExpSubdiffMap: selection LP returned " + std::string(lp::to_string(min.status)));
  }
  out.objective = min.value + efx;
  out.member = out.objective <= tol_;
  Process w({static_cast<int>(n)}, family_.numScenarios());
  for (std::size_t i = 0; i < members.size(); ++i) {
    w.at(0, members[i]) = min.argmin.segment(static_cast<Eigen::Index>(i) * n, n);
  }
  out.witness = w;
  if (!out.member) out.detail = "best selection leaves a Fenchel gap";
  return out;
}

double CondExpSubdiffMap::support(std::size_t atom, const VectorXd& d) const {
  const auto& space = family_.space();
  const double pa = space.atomProbability(G_, atom);
  double total = 0.0;
  for (auto w : G_.atom(atom)) {
    // subdiff f(x) = { u : f*(u) - x.u + f(x) <= 0 } in the conjugate's
    // extended formulation; maximize d.u over it.
    const auto fc = conjugate(family_.at(w));
    const auto& p = fc.parts();
    const auto n = fc.dim();
    const auto m = fc.auxDim();
    lp::LpProblem lp(n + m);
    lp.c = VectorXd::Zero(n + m);
    lp.c.head(n) = -d;
    lp.G.resize(p.g.size() + 1, n + m);
    lp.G.topRows(p.g.size()) << p.Gx, p.Gy;
    lp.G.bottomLeftCorner(1, n) = (p.cx - x_[w]).transpose();
    lp.G.bottomRightCorner(1, m) = p.cy.transpose();
    lp.g.resize(p.g.size() + 1);
    lp.g.head(p.g.size()) = p.g;
    lp.g(p.g.size()) = -p.c0 - fx_[w] + 1e-9 * (1.0 + std::abs(fx_[w]));
    lp.A.resize(p.a.size(), n + m);
    lp.A << p.Ax, p.Ay;
    lp.a = p.a;
    const auto sol = lp::solve(lp, lp_tol_);
    if (sol.status == lp::LpStatus::Unbounded) return kInf;
    if (sol.status == lp::LpStatus::Infeasible) {
      throw Error(ErrorKind::EmptySubdifferential, "CondExpSubdiffMap: empty subdifferential");
    }
    if (sol.status != lp::LpStatus::Optimal) {
      throw Error(ErrorKind::LpNumericalFailure, "CondExpSubdiffMap: support LP failed");
    }
    total += space.probability(w) / pa * -sol.objective;
  }
  return total;
}

bool CondExpSubdiffMap::containsDirect(std::size_t atom, const VectorXd& u) const {
  const auto& F = atom_fun_[atom];
  const VectorXd& xa = x_[G_.atom(atom).front()];
  const double fx = evaluate(F, xa, lp_tol_);
  const double fc = evaluate(conjugate(F), u, lp_tol_);
  if (!std::isfinite(fx) || !std::isfinite(fc)) return false;
  return fx + fc - xa.dot(u) <= tol_;
}

}  // namespace infoprice

#include "infoprice/dynprog.hpp"

#include "infoprice/errors.hpp"
#include "infoprice/shadow.hpp"

#include "extended.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace infoprice {

namespace {

using detail::extendedSum;
using detail::kInf;

[[noreturn]] void improper(std::size_t t, const std::string& what) {
  throw Error(ErrorKind::ImproperRecursion, "stage " + std::to_string(t) + ": " + what);
}

void requireProper(const PolyFun& f, std::size_t t, const std::string& name,
                   const lp::LpTolerances& tol) {
  switch (checkProper(f, tol)) {
    case Properness::Proper:
      return;
    case Properness::EmptyDomain:
      improper(t, name + " has an empty domain");
    case Properness::MinusInfinity:
      improper(t, name + " takes the value -inf");
  }
}

// Dense row-major accumulation of a polyhedral cone in the variables u.
struct ConeRows {
  MatrixXd G, A;
  void addInequalities(const MatrixXd& rows) { append(G, rows); }
  void addEqualities(const MatrixXd& rows) { append(A, rows); }

  static void append(MatrixXd& into, const MatrixXd& rows) {
    if (rows.rows() == 0) return;
    const auto old = into.rows();
    into.conservativeResize(old + rows.rows(), rows.cols());
    into.bottomRows(rows.rows()) = rows;
  }
};

}  // namespace

LinealityReport linealityCheck(const StochasticProgram& program, const lp::LpTolerances& tol) {
  LinealityReport report;
  const auto& space = program.space();
  const AdaptedLayout layout(space, program.stageDims());
  const Eigen::Index nw = layout.size();

  std::vector<PolyFun> rec;
  try {
    for (const auto& h : program.integrands()) rec.push_back(recession(h));
  } catch (const Error& e) {
    report.proper = false;
    report.detail = e.what();
    return report;
  }

  Eigen::Index nu = nw;
  std::vector<Eigen::Index> yoff;
  for (const auto& r : rec) {
    yoff.push_back(nu);
    nu += r.auxDim();
  }

  ConeRows cone;
  cone.G.resize(0, nu);
  cone.A.resize(0, nu);
  for (std::size_t w = 0; w < rec.size(); ++w) {
    const auto& p = rec[w].parts();
    const MatrixXd M = layout.scenarioMap(w);
    const Eigen::Index ny = rec[w].auxDim();
    MatrixXd G = MatrixXd::Zero(p.Gx.rows() + 1, nu);
    G.topLeftCorner(p.Gx.rows(), nw) = p.Gx * M;
    G.block(0, yoff[w], p.Gy.rows(), ny) = p.Gy;
    G.bottomLeftCorner(1, nw) = p.cx.transpose() * M;
    G.block(p.Gx.rows(), yoff[w], 1, ny) = p.cy.transpose();
    cone.addInequalities(G);
    MatrixXd A = MatrixXd::Zero(p.Ax.rows(), nu);
    A.leftCols(nw) = p.Ax * M;
    A.block(0, yoff[w], p.Ay.rows(), ny) = p.Ay;
    cone.addEqualities(A);
  }
  report.rows = static_cast<int>(cone.G.rows());

  // max sum s subject to G u + s <= 0, A u = 0, 0 <= s <= 1. The feasible
  // set scales, so s_i = 1 exactly on the rows that are not implicit
  // equalities and u is a relative-interior point of the lifted cone.
  const Eigen::Index nr = cone.G.rows();
  lp::LpProblem relint(nu + nr);
  relint.c = VectorXd::Zero(nu + nr);
  relint.c.tail(nr).setConstant(-1.0);
  relint.G = MatrixXd::Zero(3 * nr, nu + nr);
  relint.G.topLeftCorner(nr, nu) = cone.G;
  relint.G.block(0, nu, nr, nr) = MatrixXd::Identity(nr, nr);
  relint.G.block(nr, nu, nr, nr) = MatrixXd::Identity(nr, nr);
  relint.G.block(2 * nr, nu, nr, nr) = -MatrixXd::Identity(nr, nr);
  relint.g = VectorXd::Zero(3 * nr);
  relint.g.segment(nr, nr).setOnes();
  relint.A = MatrixXd::Zero(cone.A.rows(), nu + nr);
  relint.A.leftCols(nu) = cone.A;
  relint.a = VectorXd::Zero(cone.A.rows());
  const auto rel = lp::solve(relint, tol);
  if (rel.status != lp::LpStatus::Optimal) {
    report.detail = "relative-interior LP: " + std::string(lp::to_string(rel.status));
    return report;
  }
  const VectorXd interior = rel.primal.head(nu);
  for (Eigen::Index i = 0; i < nr; ++i) {
    report.row_slacks.push_back(rel.primal(nu + i));
    if (rel.primal(nu + i) > 0.5) ++report.strict_rows;
  }
  // Strict rows force m_i.u <= -1, so genuine directions are not tiny;
  // anything below the threshold is LP noise on the zero cone.
  const double scale = interior.head(nw).lpNorm<Eigen::Infinity>();
  VectorXd w0 = VectorXd::Zero(nw);
  if (scale > 1e-7) {
    w0 = interior.head(nw) / scale;
    w0 = (w0.array().abs() < 1e-9).select(0.0, w0);
  }
  report.witness = layout.toProcess(w0);

  // -w0 in the projected cone, with w fixed and y free.
  lp::LpProblem back(nu);
  back.G = cone.G;
  back.g = VectorXd::Zero(cone.G.rows());
  back.A.resize(cone.A.rows() + nw, nu);
  back.A << cone.A, MatrixXd::Identity(nw, nu);
  back.a.resize(back.A.rows());
  back.a << VectorXd::Zero(cone.A.rows()), -w0;
  const auto sol = lp::solve(back, tol);
  report.linear = sol.status == lp::LpStatus::Optimal;
  if (!report.linear) report.detail = "the recession cone contains a one-sided direction";
  return report;
}

RecursionTable primalRecursion(const StochasticProgram& program, const lp::LpTolerances& tol) {
  const auto& space = program.space();
  const std::size_t T = program.numStages() - 1;
  const std::size_t N = program.numScenarios();
  RecursionTable table;
  table.h.resize(T + 1);
  table.h_tilde.resize(T + 1);
  table.h_tilde[T] = program.integrands();

  for (std::size_t t = T + 1; t-- > 0;) {
    const auto& part = space.partition(t);
    for (std::size_t k = 0; k < part.numAtoms(); ++k) {
      table.h[t].push_back(expectationFamily(space, part, k, table.h_tilde[t]));
      requireProper(table.h[t].back(), t, "h_t on atom " + std::to_string(k), tol);
    }
    if (t == 0) break;
    std::vector<int> coords(static_cast<std::size_t>(program.stageDims()[t]));
    std::iota(coords.begin(), coords.end(), program.stageOffset(t));
    std::vector<PolyFun> reduced;
    for (std::size_t k = 0; k < part.numAtoms(); ++k) {
      reduced.push_back(partialMin(table.h[t][k], coords));
      requireProper(reduced.back(), t, "inf over x_t of h_t on atom " + std::to_string(k), tol);
    }
    for (std::size_t w = 0; w < N; ++w) table.h_tilde[t - 1].push_back(reduced[part.atomOf(w)]);
  }

  table.value = 0.0;
  for (std::size_t k = 0; k < table.h[0].size(); ++k) {
    const auto min = minimize(table.h[0][k], tol);
    if (min.status == lp::LpStatus::Unbounded) improper(0, "inf h_0 = -inf");
    if (min.status != lp::LpStatus::Optimal) {
      throw Error(ErrorKind::LpNumericalFailure,
                  "primalRecursion: minimizing h_0 returned " + std::string(lp::to_string(min.status)));
    }
    table.value += space.atomProbability(0, k) * min.value;
  }
  return table;
}

void dualRecursion(const StochasticProgram& program, RecursionTable& table,
                   const lp::LpTolerances& tol) {
  const auto& space = program.space();
  const std::size_t T = program.numStages() - 1;
  const std::size_t N = program.numScenarios();
  table.g.assign(T + 1, {});
  table.g_tilde.assign(T + 1, {});

  for (std::size_t w = 0; w < N; ++w) {
    requireProper(program.integrand(w), T, "h(., " + space.scenarios()[w].id + ")", tol);
    table.g_tilde[T].push_back(conjugate(program.integrand(w)));
  }

  for (std::size_t t = T + 1; t-- > 0;) {
    const auto& part = space.partition(t);
    std::vector<PolyFun> back;
    for (const auto& g : table.g_tilde[t]) back.push_back(conjugate(g));
    for (std::size_t k = 0; k < part.numAtoms(); ++k) {
      table.g[t].push_back(conjugate(expectationFamily(space, part, k, back)));
      requireProper(table.g[t].back(), t, "g_t on atom " + std::to_string(k), tol);
    }
    if (t == 0) break;
    const int prev = program.cumulativeDim(t - 1);
    const MatrixXd slice = MatrixXd::Identity(program.cumulativeDim(t), prev);
    std::vector<PolyFun> reduced;
    for (std::size_t k = 0; k < part.numAtoms(); ++k) {
      reduced.push_back(affineCompose(table.g[t][k], slice, VectorXd::Zero(program.cumulativeDim(t))));
      requireProper(reduced.back(), t, "g_t(., 0) on atom " + std::to_string(k), tol);
    }
    for (std::size_t w = 0; w < N; ++w) table.g_tilde[t - 1].push_back(reduced[part.atomOf(w)]);
  }

  table.dual_value = 0.0;
  const VectorXd zero = VectorXd::Zero(program.stageDims()[0]);
  for (std::size_t k = 0; k < table.g[0].size(); ++k) {
    table.dual_value += space.atomProbability(0, k) * evaluate(table.g[0][k], zero, tol);
  }
}

RecursionTable dualRecursion(const StochasticProgram& program, const lp::LpTolerances& tol) {
  RecursionTable table;
  dualRecursion(program, table, tol);
  return table;
}

VectorXd conditionedPrefix(const FilteredSpace& space, const Process& v, std::size_t t,
                           std::size_t scenario) {
  VectorXd out = VectorXd::Zero(v.cumulativeDim(t));
  Eigen::Index off = 0;
  for (std::size_t s = 0; s < t; ++s) {
    const auto cond = condExp(space, t, v.stage(s));
    const auto n = static_cast<Eigen::Index>(v.stageDims()[s]);
    out.segment(off, n) = cond[scenario];
    off += n;
  }
  return out;
}

// Evaluations of one function, memoized on exact point equality. Adapted
// arguments repeat across the scenarios of an atom.
class EvalCache {
 public:
  EvalCache(const PolyFun& f, const lp::LpTolerances& tol) : f_(&f), tol_(&tol) {}

  double operator()(const VectorXd& x) {
    for (const auto& [p, v] : seen_) {
      if (p == x) return v;
    }
    const double v = evaluate(*f_, x, *tol_);
    seen_.emplace_back(x, v);
    return v;
  }

 private:
  const PolyFun* f_;
  const lp::LpTolerances* tol_;
  std::vector<std::pair<VectorXd, double>> seen_;
};

PrimalDpReport verifyPrimalDP(const StochasticProgram& program, const RecursionTable& table,
                              const Process& x, double tol, const lp::LpTolerances& lp_tol) {
  if (!table.hasPrimal()) {
    throw Error(ErrorKind::ValidationError, "verifyPrimalDP: the primal table is empty");
  }
  const auto& space = program.space();
  const std::size_t N = program.numScenarios();
  PrimalDpReport r;
  r.adapted = isAdapted(space, x, tol);
  r.phi0 = solvePrimal(program, lp_tol).value;
  r.recursion_value = table.value;

  std::vector<double> inf0;
  for (const auto& h0 : table.h[0]) inf0.push_back(minimize(h0, lp_tol).value);

  for (std::size_t t = 0; t < program.numStages(); ++t) {
    const auto& part = space.partition(t);
    double total = 0.0;
    std::vector<double> current(N), residual(N);
    std::vector<EvalCache> h;
    for (const auto& f : table.h[t]) h.emplace_back(f, lp_tol);
    for (std::size_t w = 0; w < N; ++w) {
      current[w] = h[part.atomOf(w)](x.truncated(w, t));
      total = extendedSum(total, space.probability(w) * current[w]);
      double floor = inf0[part.atomOf(w)];
      if (t > 0) floor = evaluate(table.h_tilde[t - 1][w], x.truncated(w, t - 1), lp_tol);
      residual[w] = std::isfinite(current[w]) && std::isfinite(floor) ? current[w] - floor : kInf;
    }
    r.stage_values.push_back(total);
    r.margins.push_back(std::isfinite(total) && std::isfinite(r.phi0) ? total - r.phi0 : kInf);
    r.argmin.push_back(std::move(residual));
  }
  r.inequalities_hold = std::all_of(r.margins.begin(), r.margins.end(),
                                    [&](double m) { return m >= -tol; });
  r.optimal = r.adapted && std::all_of(r.margins.begin(), r.margins.end(),
                                       [&](double m) { return std::abs(m) <= tol; });
  return r;
}

DualDpReport verifyDualDP(const StochasticProgram& program, const RecursionTable& table,
                          const Process& x, const Process& v, double tol,
                          const lp::LpTolerances& lp_tol) {
  if (!table.hasDual()) {
    throw Error(ErrorKind::ValidationError, "verifyDualDP: the dual table is empty");
  }
  const auto& space = program.space();
  const std::size_t N = program.numScenarios();
  DualDpReport r;
  r.adapted = isAdapted(space, x, tol);
  r.in_annihilator = inAnnihilator(space, v, tol).member;
  r.premise = expectedValue(program, x, lp_tol) < kInf && expectedConjugate(program, v, lp_tol) < kInf;
  r.phi0 = solvePrimal(program, lp_tol).value;
  r.recursion_value = table.dual_value;

  for (std::size_t t = 0; t < program.numStages(); ++t) {
    const auto& part = space.partition(t);
    std::vector<PolyFun> star;
    for (const auto& g : table.g[t]) star.push_back(conjugate(g));
    std::vector<EvalCache> gc, sc;
    for (std::size_t k = 0; k < star.size(); ++k) {
      gc.emplace_back(table.g[t][k], lp_tol);
      sc.emplace_back(star[k], lp_tol);
    }
    double gsum = 0.0, ssum = 0.0;
    std::vector<double> residual(N);
    for (std::size_t w = 0; w < N; ++w) {
      const auto k = part.atomOf(w);
      const VectorXd e = conditionedPrefix(space, v, t, w);
      const VectorXd xt = x.truncated(w, t);
      const double gv = gc[k](e);
      const double gs = sc[k](xt);
      gsum = extendedSum(gsum, space.probability(w) * gv);
      ssum = extendedSum(ssum, space.probability(w) * gs);
      residual[w] = std::isfinite(gv) && std::isfinite(gs) ? gs + gv - xt.dot(e) : kInf;
    }
    r.stage_values.push_back(gsum);
    r.margins.push_back(std::isfinite(gsum) && std::isfinite(r.phi0) ? gsum + r.phi0 : kInf);
    r.fenchel_sums.push_back(std::isfinite(gsum) && std::isfinite(ssum) ? gsum + ssum : kInf);
    r.residuals.push_back(std::move(residual));
  }
  r.inequalities_hold = std::all_of(r.margins.begin(), r.margins.end(),
                                    [&](double m) { return m >= -tol; });
  r.optimal = r.adapted && r.in_annihilator && r.premise &&
              std::all_of(r.fenchel_sums.begin(), r.fenchel_sums.end(),
                          [&](double s) { return std::abs(s) <= tol; });
  return r;
}

}  // namespace infoprice

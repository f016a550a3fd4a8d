#include "infoprice/polyfun.hpp"

#include "infoprice/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace infoprice {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string shape(const MatrixXd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

MatrixXd vstack(const MatrixXd& top, const MatrixXd& bottom) {
  MatrixXd out(top.rows() + bottom.rows(), std::max(top.cols(), bottom.cols()));
  if (top.rows() > 0) out.topRows(top.rows()) = top;
  if (bottom.rows() > 0) out.bottomRows(bottom.rows()) = bottom;
  return out;
}

VectorXd vcat(const VectorXd& top, const VectorXd& bottom) {
  VectorXd out(top.size() + bottom.size());
  out << top, bottom;
  return out;
}

MatrixXd blockDiag(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out = MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

MatrixXd hstack(const MatrixXd& left, const MatrixXd& right) {
  MatrixXd out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

void requireSameDim(const PolyFun& f, const PolyFun& g, const char* op) {
  if (f.dim() != g.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": dimensions " +
                                                  std::to_string(f.dim()) + " and " +
                                                  std::to_string(g.dim()) + " differ");
  }
}

// Inequality rows that are positive multiples of each other collapse to the
// tightest one, and rows reading 0 <= (nonnegative) go. Sums of scenario
// integrands repeat their box rows on shared coordinates, and every surviving
// row becomes a variable of the conjugate.
void dropParallelRows(PolyFunParts& p) {
  const auto ni = p.g.size();
  if (ni < 2) return;
  std::map<std::vector<long long>, Eigen::Index> first;
  std::vector<Eigen::Index> keep;
  VectorXd g = p.g;
  std::vector<long long> key;
  for (Eigen::Index i = 0; i < ni; ++i) {
    const double sx = p.Gx.cols() > 0 ? p.Gx.row(i).cwiseAbs().maxCoeff() : 0.0;
    const double sy = p.Gy.cols() > 0 ? p.Gy.row(i).cwiseAbs().maxCoeff() : 0.0;
    const double sc = std::max(sx, sy);
    if (sc == 0.0) {
      if (p.g(i) < 0.0) keep.push_back(i);
      continue;
    }
    key.clear();
    for (Eigen::Index j = 0; j < p.Gx.cols(); ++j) key.push_back(std::llround(p.Gx(i, j) / sc * 1e12));
    for (Eigen::Index j = 0; j < p.Gy.cols(); ++j) key.push_back(std::llround(p.Gy(i, j) / sc * 1e12));
    const auto [it, inserted] = first.try_emplace(key, i);
    if (inserted) {
      keep.push_back(i);
      g(i) = p.g(i) / sc;
    } else {
      g(it->second) = std::min(g(it->second), p.g(i) / sc);
    }
  }
  if (static_cast<Eigen::Index>(keep.size()) == ni) return;
  // Kept rows are rescaled to unit max-norm so that their rhs matches g.
  PolyFunParts q = p;
  q.Gx.resize(static_cast<Eigen::Index>(keep.size()), p.Gx.cols());
  q.Gy.resize(static_cast<Eigen::Index>(keep.size()), p.Gy.cols());
  q.g.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto i = keep[k];
    const auto r = static_cast<Eigen::Index>(k);
    const double sx = p.Gx.cols() > 0 ? p.Gx.row(i).cwiseAbs().maxCoeff() : 0.0;
    const double sy = p.Gy.cols() > 0 ? p.Gy.row(i).cwiseAbs().maxCoeff() : 0.0;
    const double sc = std::max(sx, sy);
    if (sc == 0.0) {
      q.Gx.row(r) = p.Gx.row(i);
      q.Gy.row(r) = p.Gy.row(i);
      q.g(r) = p.g(i);
    } else {
      q.Gx.row(r) = p.Gx.row(i) / sc;
      q.Gy.row(r) = p.Gy.row(i) / sc;
      q.g(r) = g(i);
    }
  }
  p = std::move(q);
}

// Substitutes out the auxiliary variables that the equality rows determine.
// Pivots come from a full-pivot LU of Ay; rows left with no auxiliary
// coefficients stay as constraints on x, and rows that reduce to 0 = 0 or
// 0 <= (nonnegative) are dropped.
PolyFun eliminateEqualities(PolyFunParts p) {
  const auto ne = p.a.size();
  const auto m = p.cy.size();
  dropParallelRows(p);
  if (ne == 0 || m == 0) return PolyFun(std::move(p));
  Eigen::FullPivLU<MatrixXd> lu(p.Ay);
  lu.setThreshold(1e-10);
  const auto r = lu.rank();
  if (r == 0) return PolyFun(std::move(p));

  std::vector<Eigen::Index> rows(static_cast<std::size_t>(ne)), cols(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < ne; ++i) rows[static_cast<std::size_t>(i)] = lu.permutationP().indices()(i);
  for (Eigen::Index j = 0; j < m; ++j) cols[static_cast<std::size_t>(j)] = lu.permutationQ().indices()(j);
  // permutationP maps original row i to position P(i); invert to list pivots first.
  std::vector<Eigen::Index> prow(static_cast<std::size_t>(ne)), pcol(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < ne; ++i) prow[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])] = i;
  for (Eigen::Index j = 0; j < m; ++j) pcol[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j)];
  const std::vector<Eigen::Index> R(prow.begin(), prow.begin() + r), Rn(prow.begin() + r, prow.end());
  const std::vector<Eigen::Index> B(pcol.begin(), pcol.begin() + r), Nc(pcol.begin() + r, pcol.end());

  const MatrixXd AyRB = p.Ay(R, B);
  const Eigen::PartialPivLU<MatrixXd> piv(AyRB);
  // y_B = s0 - Sx x - Sy y_N
  const VectorXd s0 = piv.solve(VectorXd(p.a(R)));
  const MatrixXd Sx = piv.solve(MatrixXd(p.Ax(R, Eigen::all)));
  const MatrixXd Sy = piv.solve(MatrixXd(p.Ay(R, Nc)));

  PolyFunParts q;
  const VectorXd cyB = p.cy(B);
  q.cx = p.cx - Sx.transpose() * cyB;
  q.cy = VectorXd(p.cy(Nc)) - Sy.transpose() * cyB;
  q.c0 = p.c0 + cyB.dot(s0);

  const MatrixXd GyB = p.Gy(Eigen::all, B);
  MatrixXd Gx = p.Gx - GyB * Sx;
  MatrixXd Gy = MatrixXd(p.Gy(Eigen::all, Nc)) - GyB * Sy;
  VectorXd g = p.g - GyB * s0;

  const MatrixXd AyB = p.Ay(Rn, B);
  MatrixXd Ax = MatrixXd(p.Ax(Rn, Eigen::all)) - AyB * Sx;
  MatrixXd Ay = MatrixXd(p.Ay(Rn, Nc)) - AyB * Sy;
  VectorXd a = VectorXd(p.a(Rn)) - AyB * s0;

  const double scale = std::max(1.0, p.Ay.cwiseAbs().maxCoeff());
  const double tiny = 1e-12 * scale;
  auto clean = [&](MatrixXd& M) { M = (M.array().abs() < tiny).select(0.0, M); };
  clean(Gx);
  clean(Gy);
  clean(Ax);
  clean(Ay);

  std::vector<Eigen::Index> keepG, keepA;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const bool empty = Gx.row(i).isZero(0.0) && Gy.row(i).isZero(0.0);
    if (!(empty && g(i) >= 0.0)) keepG.push_back(i);
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const bool empty = Ax.row(i).isZero(0.0) && Ay.row(i).isZero(0.0);
    if (!(empty && std::abs(a(i)) <= tiny)) keepA.push_back(i);
  }
  q.Gx = Gx(keepG, Eigen::all);
  q.Gy = Gy(keepG, Eigen::all);
  q.g = g(keepG);
  q.Ax = Ax(keepA, Eigen::all);
  q.Ay = Ay(keepA, Eigen::all);
  q.a = a(keepA);
  dropParallelRows(q);
  return PolyFun(std::move(q));
}

}  // namespace

PolyFun::PolyFun(PolyFunParts parts) : p_(std::move(parts)) {
  const auto d = p_.cx.size();
  const auto m = p_.cy.size();
  const auto ok = p_.Gx.rows() == p_.g.size() && p_.Gy.rows() == p_.g.size() &&
                  p_.Gx.cols() == d && p_.Gy.cols() == m && p_.Ax.rows() == p_.a.size() &&
                  p_.Ay.rows() == p_.a.size() && p_.Ax.cols() == d && p_.Ay.cols() == m;
  if (!ok) {
    throw Error(ErrorKind::ShapeMismatch,
                "PolyFun blocks inconsistent: d=" + std::to_string(d) + " m=" +
                    std::to_string(m) + " Gx " + shape(p_.Gx) + " Gy " + shape(p_.Gy) +
                    " g " + std::to_string(p_.g.size()) + " Ax " + shape(p_.Ax) + " Ay " +
                    shape(p_.Ay) + " a " + std::to_string(p_.a.size()));
  }
}

PolyFun maxAffine(std::span<const AffinePiece> pieces) {
  if (pieces.empty()) throw Error(ErrorKind::EmptyPieceList, "maxAffine needs at least one piece");
  const auto d = pieces.front().slope.size();
  const auto k = static_cast<Eigen::Index>(pieces.size());
  PolyFunParts p;
  p.cx = VectorXd::Zero(d);
  p.cy = VectorXd::Ones(1);
  p.Gx.resize(k, d);
  p.Gy = -MatrixXd::Ones(k, 1);
  p.g.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& piece = pieces[static_cast<std::size_t>(i)];
    if (piece.slope.size() != d) {
      throw Error(ErrorKind::DimensionMismatch, "maxAffine: piece " + std::to_string(i) +
                                                    " has slope of length " +
                                                    std::to_string(piece.slope.size()));
    }
    p.Gx.row(i) = piece.slope.transpose();
    p.g(i) = -piece.intercept;
  }
  p.Ax.resize(0, d);
  p.Ay.resize(0, 1);
  p.a.resize(0);
  return PolyFun(std::move(p));
}

PolyFun indicator(const MatrixXd& G, const VectorXd& g, const MatrixXd& A, const VectorXd& a) {
  const auto d = std::max(G.cols(), A.cols());
  if ((G.rows() > 0 && G.cols() != d) || (A.rows() > 0 && A.cols() != d) ||
      G.rows() != g.size() || A.rows() != a.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "indicator: G " + shape(G) + ", g " + std::to_string(g.size()) + ", A " +
                    shape(A) + ", a " + std::to_string(a.size()));
  }
  PolyFunParts p;
  p.cx = VectorXd::Zero(d);
  p.cy = VectorXd(0);
  p.Gx = G.rows() > 0 ? G : MatrixXd(0, d);
  p.Gy.resize(G.rows(), 0);
  p.g = g;
  p.Ax = A.rows() > 0 ? A : MatrixXd(0, d);
  p.Ay.resize(A.rows(), 0);
  p.a = a;
  return PolyFun(std::move(p));
}

PolyFun boxIndicator(const VectorXd& lower, const VectorXd& upper) {
  const auto d = lower.size();
  if (upper.size() != d) throw Error(ErrorKind::ShapeMismatch, "boxIndicator: bound lengths differ");
  MatrixXd G(2 * d, d);
  G << MatrixXd::Identity(d, d), -MatrixXd::Identity(d, d);
  VectorXd g(2 * d);
  g << upper, -lower;
  return indicator(G, g, MatrixXd(0, d), VectorXd(0));
}

PolyFun constant(Eigen::Index dim, double value) {
  PolyFunParts p;
  p.cx = VectorXd::Zero(dim);
  p.cy = VectorXd(0);
  p.c0 = value;
  p.Gx.resize(0, dim);
  p.Gy.resize(0, 0);
  p.g.resize(0);
  p.Ax.resize(0, dim);
  p.Ay.resize(0, 0);
  p.a.resize(0);
  return PolyFun(std::move(p));
}

PolyFun sum(const PolyFun& f, const PolyFun& g) {
  requireSameDim(f, g, "sum");
  const auto& a = f.parts();
  const auto& b = g.parts();
  PolyFunParts p;
  p.cx = a.cx + b.cx;
  p.cy = vcat(a.cy, b.cy);
  p.c0 = a.c0 + b.c0;
  p.Gx = vstack(a.Gx, b.Gx);
  p.Gy = blockDiag(a.Gy, b.Gy);
  p.g = vcat(a.g, b.g);
  p.Ax = vstack(a.Ax, b.Ax);
  p.Ay = blockDiag(a.Ay, b.Ay);
  p.a = vcat(a.a, b.a);
  if (p.Gx.cols() != f.dim()) p.Gx.conservativeResize(p.Gx.rows(), f.dim());
  if (p.Ax.cols() != f.dim()) p.Ax.conservativeResize(p.Ax.rows(), f.dim());
  dropParallelRows(p);
  return PolyFun(std::move(p));
}

PolyFun scale(const PolyFun& f, double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorKind::NonpositiveScale, "scale factor " + std::to_string(alpha) + " is not > 0");
  }
  PolyFunParts p = f.parts();
  p.cx *= alpha;
  p.cy *= alpha;
  p.c0 *= alpha;
  return PolyFun(std::move(p));
}

PolyFun addLinear(const PolyFun& f, const VectorXd& w) {
  if (w.size() != f.dim()) throw Error(ErrorKind::DimensionMismatch, "addLinear: length mismatch");
  PolyFunParts p = f.parts();
  p.cx -= w;
  return PolyFun(std::move(p));
}

PolyFun affineCompose(const PolyFun& f, const MatrixXd& M, const VectorXd& c) {
  if (M.rows() != f.dim() || c.size() != f.dim()) {
    throw Error(ErrorKind::ShapeMismatch, "affineCompose: M " + shape(M) + " and c of length " +
                                              std::to_string(c.size()) +
                                              " do not map into dimension " +
                                              std::to_string(f.dim()));
  }
  const auto& a = f.parts();
  PolyFunParts p;
  p.cx = M.transpose() * a.cx;
  p.cy = a.cy;
  p.c0 = a.c0 + a.cx.dot(c);
  p.Gx = a.Gx * M;
  p.Gy = a.Gy;
  p.g = a.g - a.Gx * c;
  p.Ax = a.Ax * M;
  p.Ay = a.Ay;
  p.a = a.a - a.Ax * c;
  dropParallelRows(p);
  return PolyFun(std::move(p));
}

PolyFun partialMin(const PolyFun& f, std::span<const int> coords) {
  std::vector<bool> drop(static_cast<std::size_t>(f.dim()), false);
  for (int c : coords) {
    if (c < 0 || c >= f.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "partialMin: coordinate " + std::to_string(c) +
                                                    " out of range");
    }
    drop[static_cast<std::size_t>(c)] = true;
  }
  std::vector<Eigen::Index> keep, moved;
  for (Eigen::Index j = 0; j < f.dim(); ++j) {
    (drop[static_cast<std::size_t>(j)] ? moved : keep).push_back(j);
  }
  const auto& a = f.parts();
  const auto nk = static_cast<Eigen::Index>(keep.size());
  const auto nm = static_cast<Eigen::Index>(moved.size());
  PolyFunParts p;
  p.cx.resize(nk);
  p.cy.resize(a.cy.size() + nm);
  p.cy.head(a.cy.size()) = a.cy;
  p.c0 = a.c0;
  p.Gx.resize(a.g.size(), nk);
  p.Gy.resize(a.g.size(), a.cy.size() + nm);
  p.Gy.leftCols(a.cy.size()) = a.Gy;
  p.Ax.resize(a.a.size(), nk);
  p.Ay.resize(a.a.size(), a.cy.size() + nm);
  p.Ay.leftCols(a.cy.size()) = a.Ay;
  for (Eigen::Index k = 0; k < nk; ++k) {
    p.cx(k) = a.cx(keep[static_cast<std::size_t>(k)]);
    p.Gx.col(k) = a.Gx.col(keep[static_cast<std::size_t>(k)]);
    p.Ax.col(k) = a.Ax.col(keep[static_cast<std::size_t>(k)]);
  }
  for (Eigen::Index k = 0; k < nm; ++k) {
    const auto j = moved[static_cast<std::size_t>(k)];
    p.cy(a.cy.size() + k) = a.cx(j);
    p.Gy.col(a.cy.size() + k) = a.Gx.col(j);
    p.Ay.col(a.cy.size() + k) = a.Ax.col(j);
  }
  p.g = a.g;
  p.a = a.a;
  return eliminateEqualities(std::move(p));
}

PolyFun conjugate(const PolyFun& f) {
  // f*(v) = sup_{x,y} { v·x - cx·x - cy·y - c0 : constraints }
  //       = inf_{lambda >= 0, mu} { g·lambda + a·mu - c0 :
  //             v - Gx^T lambda - Ax^T mu = cx,  Gy^T lambda + Ay^T mu = -cy }
  const auto& a = f.parts();
  const auto d = f.dim();
  const auto m = f.auxDim();
  const auto ni = f.numInequalities();
  const auto ne = f.numEqualities();
  PolyFunParts p;
  p.cx = VectorXd::Zero(d);
  p.cy = vcat(a.g, a.a);
  p.c0 = -a.c0;
  p.Gx = MatrixXd::Zero(ni, d);
  p.Gy = MatrixXd::Zero(ni, ni + ne);
  p.Gy.leftCols(ni) = -MatrixXd::Identity(ni, ni);
  p.g = VectorXd::Zero(ni);
  p.Ax = MatrixXd::Zero(d + m, d);
  p.Ax.topRows(d) = MatrixXd::Identity(d, d);
  p.Ay.resize(d + m, ni + ne);
  p.Ay.topRows(d) = hstack(-a.Gx.transpose(), -a.Ax.transpose());
  p.Ay.bottomRows(m) = hstack(a.Gy.transpose(), a.Ay.transpose());
  p.a = vcat(a.cx, -a.cy);
  return eliminateEqualities(std::move(p));
}

PolyFun recession(const PolyFun& f) {
  if (checkProper(f) != Properness::Proper) {
    throw Error(ErrorKind::ImproperInput, "recession: input is not proper");
  }
  PolyFunParts p = f.parts();
  p.c0 = 0.0;
  p.g.setZero();
  p.a.setZero();
  return PolyFun(std::move(p));
}

PolyFun weightedSum(std::span<const double> weights, std::span<const PolyFun> family) {
  if (family.empty() || weights.size() != family.size()) {
    throw Error(ErrorKind::EmptyAtom, "weightedSum: empty family or weight count mismatch");
  }
  PolyFun out = scale(family[0], weights[0]);
  for (std::size_t i = 1; i < family.size(); ++i) out = sum(out, scale(family[i], weights[i]));
  return out;
}

PolyFun expectationFamily(const FilteredSpace& space, const Partition& part, std::size_t atom,
                          std::span<const PolyFun> family) {
  if (atom >= part.numAtoms()) throw Error(ErrorKind::EmptyAtom, "expectationFamily: no such atom");
  const auto& members = part.atom(atom);
  if (members.empty()) throw Error(ErrorKind::EmptyAtom, "expectationFamily: empty atom");
  const double pa = space.atomProbability(part, atom);
  std::vector<double> weights;
  std::vector<PolyFun> fs;
  for (auto s : members) {
    weights.push_back(space.probability(s) / pa);
    fs.push_back(family[s]);
  }
  return weightedSum(weights, fs);
}

lp::LpProblem evaluationProblem(const PolyFun& f, const VectorXd& x) {
  if (x.size() != f.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "evaluate: point of length " +
                                                  std::to_string(x.size()) + ", function of dim " +
                                                  std::to_string(f.dim()));
  }
  const auto& a = f.parts();
  lp::LpProblem prob;
  prob.c = a.cy;
  prob.c0 = a.cx.dot(x) + a.c0;
  prob.G = a.Gy;
  prob.g = a.g - a.Gx * x;
  prob.A = a.Ay;
  prob.a = a.a - a.Ax * x;
  return prob;
}

Evaluation evaluateDetailed(const PolyFun& f, const VectorXd& x, const lp::LpTolerances& tol) {
  Evaluation out;
  const auto prob = evaluationProblem(f, x);
  out.lp = lp::solve(prob, tol);
  switch (out.lp.status) {
    case lp::LpStatus::Optimal: out.value = out.lp.objective; break;
    case lp::LpStatus::Infeasible: out.value = kInf; break;
    case lp::LpStatus::Unbounded: out.value = -kInf; break;
    case lp::LpStatus::NumericalFailure:
      throw Error(ErrorKind::LpNumericalFailure, "evaluate: LP numerical failure");
  }
  return out;
}

double evaluate(const PolyFun& f, const VectorXd& x, const lp::LpTolerances& tol) {
  return evaluateDetailed(f, x, tol).value;
}

std::optional<Subgradient> subgradient(const PolyFun& f, const VectorXd& x,
                                       const lp::LpTolerances& tol) {
  const auto ev = evaluateDetailed(f, x, tol);
  if (ev.value == kInf) return std::nullopt;
  if (ev.value == -kInf) {
    throw Error(ErrorKind::ImproperFunction, "subgradient: f(x) = -inf");
  }
  const auto& a = f.parts();
  Subgradient out;
  out.vector = a.cx + a.Gx.transpose() * ev.lp.lambda + a.Ax.transpose() * ev.lp.mu;
  const double conj = evaluate(conjugate(f), out.vector, tol);
  out.fenchel_residual = ev.value + conj - x.dot(out.vector);
  const double scale = std::max({1.0, std::abs(ev.value), std::abs(x.dot(out.vector))});
  if (!std::isfinite(out.fenchel_residual) || std::abs(out.fenchel_residual) > 1e-8 * scale) {
    throw Error(ErrorKind::LpNumericalFailure,
                "subgradient: Fenchel equality residual " + std::to_string(out.fenchel_residual));
  }
  return out;
}

Properness checkProper(const PolyFun& f, const lp::LpTolerances& tol) {
  const auto& a = f.parts();
  const auto d = f.dim();
  const auto m = f.auxDim();

  lp::LpProblem feas(d + m);
  feas.G = hstack(a.Gx, a.Gy);
  feas.g = a.g;
  feas.A = hstack(a.Ax, a.Ay);
  feas.a = a.a;
  const auto fs = lp::solve(feas, tol);
  if (fs.status == lp::LpStatus::Infeasible) return Properness::EmptyDomain;
  if (fs.status != lp::LpStatus::Optimal) {
    throw Error(ErrorKind::LpNumericalFailure, "checkProper: domain LP failed");
  }
  if (m == 0) return Properness::Proper;

  // A descent ray in y does not depend on x, so f = -inf on all of dom f iff
  // the evaluation LP at one domain point is unbounded.
  const auto ev = lp::solve(evaluationProblem(f, fs.primal.head(d)), tol);
  switch (ev.status) {
    case lp::LpStatus::Optimal: return Properness::Proper;
    case lp::LpStatus::Unbounded: return Properness::MinusInfinity;
    default: break;
  }
  throw Error(ErrorKind::LpNumericalFailure, "checkProper: evaluation LP failed");
}

Minimization minimize(const PolyFun& f, const lp::LpTolerances& tol) {
  const auto& a = f.parts();
  const auto d = f.dim();
  Minimization out;
  out.problem.c = vcat(a.cx, a.cy);
  out.problem.c0 = a.c0;
  out.problem.G = hstack(a.Gx, a.Gy);
  out.problem.g = a.g;
  out.problem.A = hstack(a.Ax, a.Ay);
  out.problem.a = a.a;
  out.lp = lp::solve(out.problem, tol);
  out.status = out.lp.status;
  switch (out.status) {
    case lp::LpStatus::Optimal:
      out.value = out.lp.objective;
      out.argmin = out.lp.primal.head(d);
      out.aux = out.lp.primal.tail(f.auxDim());
      break;
    case lp::LpStatus::Infeasible: out.value = kInf; break;
    case lp::LpStatus::Unbounded:
      out.value = -kInf;
      out.argmin = out.lp.primal.head(d);
      out.aux = out.lp.primal.tail(f.auxDim());
      break;
    case lp::LpStatus::NumericalFailure: break;
  }
  return out;
}

}  // namespace infoprice

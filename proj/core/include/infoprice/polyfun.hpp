#pragma once

#include "infoprice/filtration.hpp"
#include "infoprice/lp.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace infoprice {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Raw blocks of an extended epigraph formulation
///
///   f(x) = inf_y { cx·x + cy·y + c0 : Gx x + Gy y <= g,  Ax x + Ay y = a }
///
/// with f(x) = +inf when no y is feasible and -inf when the infimum is
/// unbounded below.
struct PolyFunParts {
  VectorXd cx;
  VectorXd cy;
  double c0 = 0.0;
  MatrixXd Gx, Gy;
  VectorXd g;
  MatrixXd Ax, Ay;
  VectorXd a;
};

/// Polyhedral convex function in extended epigraph form. Immutable; every
/// operation below returns a new function whose size grows linearly in the
/// sizes of its inputs.
class PolyFun {
 public:
  /// Throws ShapeMismatch unless all blocks agree on (dim, aux).
  explicit PolyFun(PolyFunParts parts);

  Eigen::Index dim() const { return p_.cx.size(); }
  Eigen::Index auxDim() const { return p_.cy.size(); }
  Eigen::Index numInequalities() const { return p_.g.size(); }
  Eigen::Index numEqualities() const { return p_.a.size(); }

  const PolyFunParts& parts() const { return p_; }

 private:
  PolyFunParts p_;
};

struct AffinePiece {
  VectorXd slope;
  double intercept = 0.0;
};

/// x -> max_i (slope_i·x + intercept_i), one auxiliary epigraph variable.
PolyFun maxAffine(std::span<const AffinePiece> pieces);

/// 0 on {G x <= g, A x = a}, +inf elsewhere.
PolyFun indicator(const MatrixXd& G, const VectorXd& g, const MatrixXd& A, const VectorXd& a);
PolyFun boxIndicator(const VectorXd& lower, const VectorXd& upper);
PolyFun constant(Eigen::Index dim, double value);

PolyFun sum(const PolyFun& f, const PolyFun& g);
PolyFun scale(const PolyFun& f, double alpha);
/// x -> f(x) - w·x.
PolyFun addLinear(const PolyFun& f, const VectorXd& w);
/// u -> f(M u + c).
PolyFun affineCompose(const PolyFun& f, const MatrixXd& M, const VectorXd& c);
/// u -> inf over the coordinates in `coords` of f; the remaining coordinates
/// keep their order. The result may be improper.
PolyFun partialMin(const PolyFun& f, std::span<const int> coords);
/// Legendre-Fenchel conjugate as the LP dual of the evaluation program.
/// Exact whenever dom f is nonempty.
PolyFun conjugate(const PolyFun& f);
/// Homogenized formulation (zero constant and right-hand sides).
/// Throws ImproperInput unless f is proper.
PolyFun recession(const PolyFun& f);

/// sum_i weights[i] * family[i], weights > 0.
PolyFun weightedSum(std::span<const double> weights, std::span<const PolyFun> family);

/// x -> sum_{omega in atom} p(omega)/P(atom) f_omega(x); `family` is indexed
/// by scenario.
PolyFun expectationFamily(const FilteredSpace& space, const Partition& part, std::size_t atom,
                          std::span<const PolyFun> family);

struct Evaluation {
  double value = 0.0;  // +inf, -inf or finite
  lp::LpSolution lp;
};

/// Exact infimum over the auxiliary variables. Throws LpNumericalFailure.
Evaluation evaluateDetailed(const PolyFun& f, const VectorXd& x, const lp::LpTolerances& tol = {});
double evaluate(const PolyFun& f, const VectorXd& x, const lp::LpTolerances& tol = {});

struct Subgradient {
  VectorXd vector;
  double fenchel_residual = 0.0;  // f(x) + f*(v) - x·v
};

/// A subgradient read off the evaluation LP's multipliers and certified by
/// Fenchel equality against the conjugate. std::nullopt when f(x) = +inf.
/// Throws ImproperFunction when f(x) = -inf and LpNumericalFailure when the
/// certificate does not close.
std::optional<Subgradient> subgradient(const PolyFun& f, const VectorXd& x,
                                       const lp::LpTolerances& tol = {});

enum class Properness { Proper, EmptyDomain, MinusInfinity };

/// Two LPs: a feasibility problem for the domain, then f at the point found
/// (unbounded there means unbounded everywhere on the domain).
Properness checkProper(const PolyFun& f, const lp::LpTolerances& tol = {});

struct Minimization {
  lp::LpStatus status = lp::LpStatus::NumericalFailure;
  double value = 0.0;  // +inf when infeasible, -inf when unbounded
  VectorXd argmin;     // argument part of the LP solution
  VectorXd aux;        // auxiliary part
  lp::LpProblem problem;
  lp::LpSolution lp;
};

/// inf_x f(x) as one LP over (x, y).
Minimization minimize(const PolyFun& f, const lp::LpTolerances& tol = {});

/// The LP whose optimum is f(x).
lp::LpProblem evaluationProblem(const PolyFun& f, const VectorXd& x);

}  // namespace infoprice

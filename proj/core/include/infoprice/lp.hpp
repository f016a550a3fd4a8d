#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace infoprice::lp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// minimize c·w + c0  subject to  G w <= g,  A w = a,  w free.
struct LpProblem {
  VectorXd c;
  double c0 = 0.0;
  MatrixXd G;
  VectorXd g;
  MatrixXd A;
  VectorXd a;

  LpProblem() = default;
  explicit LpProblem(Eigen::Index num_vars);

  Eigen::Index numVars() const { return c.size(); }
  Eigen::Index numInequalities() const { return G.rows(); }
  Eigen::Index numEqualities() const { return A.rows(); }

  /// Throws Error(ShapeMismatch) on inconsistent block sizes.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string_view to_string(LpStatus status);

struct LpTolerances {
  double feasibility = 1e-8;
  double gap = 1e-7;
  double pivot = 1e-9;
  double reduced_cost = 1e-9;
  long max_iterations = 100000;
};

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  long iterations = 0;

  // Optimal: primal point and objective. Unbounded: a feasible point.
  VectorXd primal;
  double objective = 0.0;

  // Optimal: Lagrange multipliers, lambda >= 0 for G rows and mu free for A
  // rows, with c + G^T lambda + A^T mu = 0 and dual objective
  // c0 - lambda·g - mu·a.
  VectorXd lambda;
  VectorXd mu;
  double dual_objective = 0.0;

  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double complementarity = 0.0;

  // Infeasible: u >= 0, z with G^T u + A^T z = 0 and u·g + z·a < 0.
  VectorXd farkas_u;
  VectorXd farkas_z;
  double farkas_value = 0.0;

  // Unbounded: G ray <= 0, A ray = 0, c·ray < 0 (ray scaled to unit max-norm).
  VectorXd ray;
};

/// Dense two-phase primal simplex with Bland's rule. Deterministic.
LpSolution solve(const LpProblem& problem, const LpTolerances& tol = {});

/// Independent re-check of whatever certificate the solution carries.
struct CertificateCheck {
  bool ok = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double farkas_residual = 0.0;
  double farkas_value = 0.0;
  double ray_residual = 0.0;
  double ray_descent = 0.0;
};

CertificateCheck checkCertificate(const LpProblem& problem,
                                  const LpSolution& solution,
                                  const LpTolerances& tol = {});

}  // namespace infoprice::lp

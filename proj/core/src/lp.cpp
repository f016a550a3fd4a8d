#include "infoprice/lp.hpp"

#include "infoprice/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace infoprice::lp {

LpProblem::LpProblem(Eigen::Index num_vars)
    : c(VectorXd::Zero(num_vars)),
      G(0, num_vars),
      g(0),
      A(0, num_vars),
      a(0) {}

void LpProblem::validate() const {
  const auto n = c.size();
  if (G.cols() != n || A.cols() != n || G.rows() != g.size() ||
      A.rows() != a.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "LpProblem: inconsistent shapes (n=" + std::to_string(n) +
                    ", G " + std::to_string(G.rows()) + "x" +
                    std::to_string(G.cols()) + ", A " +
                    std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                    ")");
  }
}

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

namespace {

// Standard form  min cs·s  s.t.  S s = b, s >= 0  with columns laid out as
// [w+ (n) | w- (n) | slacks (mI) | artificials (mA)].
class Simplex {
 public:
  Simplex(const LpProblem& p, const LpTolerances& tol) : p_(p), tol_(tol) {
    n_ = p.numVars();
    mi_ = p.numInequalities();
    me_ = p.numEqualities();
    m_ = mi_ + me_;
    row_sign_.assign(static_cast<std::size_t>(m_), 1.0);

    std::vector<Eigen::Index> needs_artificial;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double rhs = i < mi_ ? p.g(i) : p.a(i - mi_);
      if (rhs < 0.0) row_sign_[static_cast<std::size_t>(i)] = -1.0;
      if (i >= mi_ || rhs < 0.0) needs_artificial.push_back(i);
    }
    num_art_ = static_cast<Eigen::Index>(needs_artificial.size());
    art_begin_ = 2 * n_ + mi_;
    cols_ = art_begin_ + num_art_;

    S_ = MatrixXd::Zero(m_, cols_);
    b_ = VectorXd::Zero(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double s = row_sign_[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < n_; ++j) {
        const double v = i < mi_ ? p.G(i, j) : p.A(i - mi_, j);
        S_(i, j) = s * v;
        S_(i, n_ + j) = -s * v;
      }
      if (i < mi_) S_(i, 2 * n_ + i) = s;
      b_(i) = s * (i < mi_ ? p.g(i) : p.a(i - mi_));
    }
    basis_.assign(static_cast<std::size_t>(m_), -1);
    for (Eigen::Index k = 0; k < num_art_; ++k) {
      const auto row = needs_artificial[static_cast<std::size_t>(k)];
      S_(row, art_begin_ + k) = 1.0;
      basis_[static_cast<std::size_t>(row)] = art_begin_ + k;
    }
    for (Eigen::Index i = 0; i < mi_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < 0) {
        basis_[static_cast<std::size_t>(i)] = 2 * n_ + i;
      }
    }
  }

  LpSolution run() {
    LpSolution sol;
    sol.primal = VectorXd::Zero(n_);

    // Phase 1.
    VectorXd cost1 = VectorXd::Zero(cols_);
    cost1.tail(num_art_).setOnes();
    rebuild(cost1);
    barred_art_ = false;
    const auto r1 = iterate(cost1, /*fresh=*/true);
    sol.iterations = iterations_;
    if (r1 == Outcome::Budget) {
      sol.status = LpStatus::NumericalFailure;
      return sol;
    }
    // Phase 1 is bounded below by zero; an "unbounded" exit cannot happen.
    const VectorXd xb = basicValues();
    double infeas = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (isArtificial(basis_[static_cast<std::size_t>(i)])) infeas += std::max(0.0, xb(i));
    }
    if (infeas > tol_.feasibility) {
      fillFarkas(cost1, sol);
      sol.status = LpStatus::Infeasible;
      return sol;
    }

    driveOutArtificials();
    barred_art_ = true;

    // Phase 2.
    VectorXd cost2 = VectorXd::Zero(cols_);
    cost2.head(n_) = p_.c;
    cost2.segment(n_, n_) = -p_.c;
    reprice(cost2);
    const auto r2 = iterate(cost2, /*fresh=*/false);
    sol.iterations = iterations_;
    if (r2 == Outcome::Budget) {
      sol.status = LpStatus::NumericalFailure;
      return sol;
    }
    if (r2 == Outcome::Unbounded) {
      fillRay(sol);
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    fillOptimal(cost2, sol);
    return sol;
  }

 private:
  enum class Outcome { Optimal, Unbounded, Budget };

  static constexpr long kDegenerateRun = 50;
  static constexpr long kRebuildInterval = 250;

  bool isArtificial(Eigen::Index col) const { return col >= art_begin_; }

  MatrixXd basisMatrix() const {
    MatrixXd B(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      B.col(i) = S_.col(basis_[static_cast<std::size_t>(i)]);
    }
    return B;
  }

  Eigen::FullPivLU<MatrixXd> basisLu() const { return Eigen::FullPivLU<MatrixXd>(basisMatrix()); }

  VectorXd basicValues(const Eigen::FullPivLU<MatrixXd>& lu) const {
    if (m_ == 0) return VectorXd(0);
    return lu.solve(b_);
  }
  VectorXd basicValues() const { return basicValues(basisLu()); }

  VectorXd basicDuals(const Eigen::FullPivLU<MatrixXd>& lu, const VectorXd& cost) const {
    if (m_ == 0) return VectorXd(0);
    VectorXd cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
    return lu.transpose().solve(cb);
  }

  // Recompute the tableau B^{-1}[S | b] and reduced costs from scratch. Only
  // B^{-1} and B^{-1} S_x are formed: the w- block is the negated w+ block and
  // slack/artificial columns are signed unit vectors.
  void rebuild(const VectorXd& cost) {
    T_.resize(m_ + 1, cols_ + 1);
    if (m_ > 0) {
      const MatrixXd B = basisMatrix();
      MatrixXd Binv;
      if (B.isApprox(MatrixXd(B.diagonal().asDiagonal()), 0.0)) {
        Binv = B.diagonal().cwiseInverse().asDiagonal();
      } else {
        Binv = Eigen::PartialPivLU<MatrixXd>(B).inverse();
      }
      T_.leftCols(n_).topRows(m_).noalias() = Binv * S_.leftCols(n_);
      T_.block(0, n_, m_, n_) = -T_.block(0, 0, m_, n_);
      for (Eigen::Index i = 0; i < mi_; ++i) {
        T_.col(2 * n_ + i).head(m_) = row_sign_[static_cast<std::size_t>(i)] * Binv.col(i);
      }
      for (Eigen::Index k = 0; k < num_art_; ++k) {
        Eigen::Index row = 0;
        S_.col(art_begin_ + k).maxCoeff(&row);
        T_.col(art_begin_ + k).head(m_) = Binv.col(row);
      }
      T_.block(0, cols_, m_, 1).noalias() = Binv * b_;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (T_(i, cols_) < 0.0 && T_(i, cols_) > -tol_.feasibility) T_(i, cols_) = 0.0;
      }
    }
    reprice(cost);
  }

  // Reduced-cost row from the current tableau body.
  void reprice(const VectorXd& cost) {
    VectorXd cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
    T_.row(m_).head(cols_) = cost.transpose();
    T_(m_, cols_) = 0.0;
    if (m_ > 0) T_.row(m_).noalias() -= cb.transpose() * T_.topRows(m_);
    for (Eigen::Index i = 0; i < m_; ++i) T_(m_, basis_[static_cast<std::size_t>(i)]) = 0.0;
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    T_.row(row) /= T_(row, col);
    VectorXd factors = T_.col(col);
    factors(row) = 0.0;
    const Eigen::RowVectorXd prow = T_.row(row);
    T_.noalias() -= factors * prow;
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Outcome iterate(const VectorXd& cost, bool fresh) {
    long since_rebuild = fresh ? 0 : 1;
    long degenerate = 0;
    while (true) {
      if (iterations_ >= tol_.max_iterations) return Outcome::Budget;
      // Dantzig pricing; Bland's lowest-index rule after a run of degenerate
      // pivots so that cycling cannot occur.
      const bool bland = degenerate >= kDegenerateRun;
      Eigen::Index enter = -1;
      double most = -tol_.reduced_cost;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (barred_art_ && isArtificial(j)) continue;
        if (T_(m_, j) < most) {
          enter = j;
          if (bland) break;
          most = T_(m_, j);
        }
      }
      if (enter < 0) {
        // Confirm optimality on a freshly inverted tableau.
        if (since_rebuild == 0) return Outcome::Optimal;
        rebuild(cost);
        since_rebuild = 0;
        continue;
      }
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double col = T_(i, enter);
        if (col <= tol_.pivot) continue;
        const double ratio = std::max(0.0, T_(i, cols_)) / col;
        if (leave < 0 || ratio < best - 1e-12 * (1.0 + std::abs(best))) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-12 * (1.0 + std::abs(best)) &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
          leave = i;
        }
      }
      if (leave < 0) {
        if (since_rebuild == 0) {
          unbounded_col_ = enter;
          return Outcome::Unbounded;
        }
        rebuild(cost);
        since_rebuild = 0;
        continue;
      }
      // Steps whose objective gain is at roundoff level count as degenerate.
      const double gain = -T_(m_, enter) * best;
      degenerate = gain <= 1e-11 * (1.0 + std::abs(T_(m_, cols_))) ? degenerate + 1 : 0;
      pivot(leave, enter);
      ++iterations_;
      if (++since_rebuild >= kRebuildInterval) {
        rebuild(cost);
        since_rebuild = 0;
      }
    }
  }

  void driveOutArtificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (!isArtificial(basis_[static_cast<std::size_t>(i)])) continue;
      Eigen::Index best = -1;
      double best_abs = tol_.pivot;
      for (Eigen::Index j = 0; j < art_begin_; ++j) {
        const double v = std::abs(T_(i, j));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      // Rows with no usable entry are redundant; their artificial stays at 0.
      if (best >= 0) pivot(i, best);
    }
  }

  VectorXd standardToOriginal(const VectorXd& s) const {
    return s.head(n_) - s.segment(n_, n_);
  }

  VectorXd currentPoint(const Eigen::FullPivLU<MatrixXd>& lu) const {
    VectorXd s = VectorXd::Zero(cols_);
    const VectorXd xb = basicValues(lu);
    for (Eigen::Index i = 0; i < m_; ++i) s(basis_[static_cast<std::size_t>(i)]) = xb(i);
    return standardToOriginal(s);
  }

  void splitDuals(const VectorXd& y, VectorXd& lambda, VectorXd& mu) const {
    lambda.resize(mi_);
    mu.resize(me_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double yhat = y(i) * row_sign_[static_cast<std::size_t>(i)];
      if (i < mi_) {
        lambda(i) = -yhat;
      } else {
        mu(i - mi_) = -yhat;
      }
    }
  }

  void fillFarkas(const VectorXd& cost1, LpSolution& sol) const {
    const VectorXd y = basicDuals(basisLu(), cost1);
    splitDuals(y, sol.farkas_u, sol.farkas_z);
    sol.farkas_u = sol.farkas_u.cwiseMax(0.0);
    sol.farkas_value = sol.farkas_u.dot(p_.g) + sol.farkas_z.dot(p_.a);
  }

  void fillRay(LpSolution& sol) const {
    VectorXd r = VectorXd::Zero(cols_);
    r(unbounded_col_) = 1.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      r(basis_[static_cast<std::size_t>(i)]) = -T_(i, unbounded_col_);
    }
    VectorXd ray = standardToOriginal(r);
    const double scale = ray.size() > 0 ? ray.cwiseAbs().maxCoeff() : 0.0;
    if (scale > 0.0) ray /= scale;
    sol.ray = ray;
    sol.primal = currentPoint(basisLu());
    sol.objective = p_.c.dot(sol.primal) + p_.c0;
  }

  void fillOptimal(const VectorXd& cost2, LpSolution& sol) const {
    const auto lu = basisLu();
    sol.primal = currentPoint(lu);
    sol.objective = p_.c.dot(sol.primal) + p_.c0;
    const VectorXd y = basicDuals(lu, cost2);
    splitDuals(y, sol.lambda, sol.mu);
    sol.lambda = sol.lambda.cwiseMax(0.0);
    sol.dual_objective = p_.c0 - sol.lambda.dot(p_.g) - sol.mu.dot(p_.a);

    const VectorXd slack = p_.g - p_.G * sol.primal;
    double pres = 0.0;
    if (mi_ > 0) pres = std::max(pres, (-slack).maxCoeff());
    if (me_ > 0) pres = std::max(pres, (p_.A * sol.primal - p_.a).cwiseAbs().maxCoeff());
    sol.primal_residual = std::max(0.0, pres);
    const VectorXd stat = p_.c + p_.G.transpose() * sol.lambda + p_.A.transpose() * sol.mu;
    sol.dual_residual = n_ > 0 ? stat.cwiseAbs().maxCoeff() : 0.0;
    sol.gap = std::abs(sol.objective - sol.dual_objective);
    sol.complementarity =
        mi_ > 0 ? sol.lambda.cwiseProduct(slack).cwiseAbs().maxCoeff() : 0.0;

    const bool certified = sol.primal_residual <= tol_.feasibility &&
                           sol.dual_residual <= tol_.feasibility &&
                           sol.gap <= tol_.gap;
    sol.status = certified ? LpStatus::Optimal : LpStatus::NumericalFailure;
  }

  const LpProblem& p_;
  const LpTolerances& tol_;
  Eigen::Index n_ = 0, mi_ = 0, me_ = 0, m_ = 0;
  Eigen::Index num_art_ = 0, art_begin_ = 0, cols_ = 0;
  std::vector<double> row_sign_;
  std::vector<Eigen::Index> basis_;
  MatrixXd S_;
  VectorXd b_;
  MatrixXd T_;
  bool barred_art_ = false;
  long iterations_ = 0;
  Eigen::Index unbounded_col_ = -1;
};

}  // namespace

LpSolution solve(const LpProblem& problem, const LpTolerances& tol) {
  problem.validate();
  Simplex simplex(problem, tol);
  return simplex.run();
}

CertificateCheck checkCertificate(const LpProblem& p, const LpSolution& s,
                                  const LpTolerances& tol) {
  CertificateCheck out;
  switch (s.status) {
    case LpStatus::Optimal: {
      const VectorXd slack = p.g - p.G * s.primal;
      double pres = 0.0;
      if (slack.size() > 0) pres = std::max(pres, (-slack).maxCoeff());
      if (p.a.size() > 0) pres = std::max(pres, (p.A * s.primal - p.a).cwiseAbs().maxCoeff());
      out.primal_residual = std::max(0.0, pres);
      double dres = s.lambda.size() > 0 ? std::max(0.0, (-s.lambda).maxCoeff()) : 0.0;
      const VectorXd stat = p.c + p.G.transpose() * s.lambda + p.A.transpose() * s.mu;
      if (stat.size() > 0) dres = std::max(dres, stat.cwiseAbs().maxCoeff());
      out.dual_residual = dres;
      const double primal_obj = p.c.dot(s.primal) + p.c0;
      const double dual_obj = p.c0 - s.lambda.dot(p.g) - s.mu.dot(p.a);
      out.gap = std::abs(primal_obj - dual_obj);
      out.ok = out.primal_residual <= tol.feasibility &&
               out.dual_residual <= tol.feasibility && out.gap <= tol.gap;
      break;
    }
    case LpStatus::Infeasible: {
      double res = s.farkas_u.size() > 0 ? std::max(0.0, (-s.farkas_u).maxCoeff()) : 0.0;
      const VectorXd comb = p.G.transpose() * s.farkas_u + p.A.transpose() * s.farkas_z;
      if (comb.size() > 0) res = std::max(res, comb.cwiseAbs().maxCoeff());
      out.farkas_residual = res;
      out.farkas_value = s.farkas_u.dot(p.g) + s.farkas_z.dot(p.a);
      out.ok = res <= tol.feasibility && out.farkas_value <= -1e-9;
      break;
    }
    case LpStatus::Unbounded: {
      double res = 0.0;
      const VectorXd slack = p.g - p.G * s.primal;
      if (slack.size() > 0) res = std::max(res, (-slack).maxCoeff());
      if (p.a.size() > 0) res = std::max(res, (p.A * s.primal - p.a).cwiseAbs().maxCoeff());
      const VectorXd gr = p.G * s.ray;
      if (gr.size() > 0) res = std::max(res, gr.maxCoeff());
      if (p.a.size() > 0) res = std::max(res, (p.A * s.ray).cwiseAbs().maxCoeff());
      out.ray_residual = std::max(0.0, res);
      out.ray_descent = p.c.dot(s.ray);
      out.ok = out.ray_residual <= tol.feasibility && out.ray_descent < -1e-9;
      break;
    }
    case LpStatus::NumericalFailure:
      out.ok = false;
      break;
  }
  return out;
}

}  // namespace infoprice::lp

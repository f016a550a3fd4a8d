#pragma once

// Test-only reference computations. Nothing here goes through the LP
// machinery: functions are evaluated directly from their pieces and
// conjugates by exhaustive grid search.

#include "infoprice/polyfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// max-affine pieces plus the indicator of a box.
struct BoxedMaxAffine {
  std::vector<infoprice::AffinePiece> pieces;
  VectorXd lower, upper;

  int dim() const { return static_cast<int>(lower.size()); }

  double value(const VectorXd& x) const {
    for (int k = 0; k < dim(); ++k) {
      if (x(k) < lower(k) - 1e-12 || x(k) > upper(k) + 1e-12) return kInf;
    }
    double best = -kInf;
    for (const auto& p : pieces) best = std::max(best, p.slope.dot(x) + p.intercept);
    return best;
  }

  infoprice::PolyFun build() const {
    return infoprice::sum(infoprice::maxAffine(pieces), infoprice::boxIndicator(lower, upper));
  }
};

inline BoxedMaxAffine randomBoxedMaxAffine(int dim, std::mt19937& rng, int max_pieces = 4,
                                           double box = 2.0) {
  std::uniform_real_distribution<double> slope(-2.0, 2.0);
  std::uniform_real_distribution<double> icpt(-1.0, 1.0);
  std::uniform_real_distribution<double> half(0.5, box);
  std::uniform_int_distribution<int> count(1, max_pieces);
  BoxedMaxAffine f;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    VectorXd s(dim);
    for (int j = 0; j < dim; ++j) s(j) = slope(rng);
    f.pieces.push_back({s, icpt(rng)});
  }
  f.lower.resize(dim);
  f.upper.resize(dim);
  for (int j = 0; j < dim; ++j) {
    f.lower(j) = -half(rng);
    f.upper(j) = half(rng);
  }
  return f;
}

/// sup_x { v·x - f(x) } over a grid of the given step covering the box,
/// followed by four zoom passes (step / 10 each) around the best node.
template <class F>
double gridConjugate(const F& f, const VectorXd& v, const VectorXd& lower, const VectorXd& upper,
                     double step) {
  const int d = static_cast<int>(v.size());
  auto objective = [&](const VectorXd& x) {
    const double fx = f(x);
    return std::isinf(fx) ? -kInf : v.dot(x) - fx;
  };
  auto scan = [&](const VectorXd& lo, const VectorXd& hi, double h, VectorXd& best_x) {
    double best = -kInf;
    std::vector<int> counts(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      counts[static_cast<std::size_t>(k)] = static_cast<int>(std::floor((hi(k) - lo(k)) / h + 1e-9)) + 1;
    }
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    VectorXd x(d);
    while (true) {
      for (int k = 0; k < d; ++k) {
        const double node = lo(k) + h * idx[static_cast<std::size_t>(k)];
        x(k) = std::min(node, hi(k));
      }
      const double val = objective(x);
      if (val > best) {
        best = val;
        best_x = x;
      }
      int k = 0;
      while (k < d && ++idx[static_cast<std::size_t>(k)] >= counts[static_cast<std::size_t>(k)]) {
        idx[static_cast<std::size_t>(k)] = 0;
        ++k;
      }
      if (k == d) break;
    }
    // Box corners are candidates as well.
    for (int mask = 0; mask < (1 << d); ++mask) {
      for (int k = 0; k < d; ++k) x(k) = (mask >> k) & 1 ? hi(k) : lo(k);
      const double val = objective(x);
      if (val > best) {
        best = val;
        best_x = x;
      }
    }
    return best;
  };
  VectorXd best_x = lower;
  double best = scan(lower, upper, step, best_x);
  double h = step;
  for (int pass = 0; pass < 4; ++pass) {
    // A slanted ridge can put the maximizer a few cells from the best node.
    VectorXd lo = (best_x.array() - 3.0 * h).max(lower.array());
    VectorXd hi = (best_x.array() + 3.0 * h).min(upper.array());
    h /= 10.0;
    best = std::max(best, scan(lo, hi, h, best_x));
  }
  return best;
}

/// Exact conjugate of a boxed max-affine function. v.x - f(x) is concave and
/// piecewise linear on the box, so its maximum sits at a vertex of the
/// arrangement of {a_i.x + b_i = a_j.x + b_j} and the box facets; every
/// d-subset of those hyperplanes is solved and the feasible points compared.
inline double vertexConjugate(const BoxedMaxAffine& f, const VectorXd& v) {
  const int d = f.dim();
  std::vector<VectorXd> normals;
  std::vector<double> offsets;
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < f.pieces.size(); ++j) {
      normals.push_back(f.pieces[i].slope - f.pieces[j].slope);
      offsets.push_back(f.pieces[j].intercept - f.pieces[i].intercept);
    }
  }
  for (int k = 0; k < d; ++k) {
    normals.push_back(VectorXd::Unit(d, k));
    offsets.push_back(f.lower(k));
    normals.push_back(VectorXd::Unit(d, k));
    offsets.push_back(f.upper(k));
  }
  const int m = static_cast<int>(normals.size());
  double best = -kInf;
  std::vector<int> pick(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) pick[static_cast<std::size_t>(k)] = k;
  while (true) {
    Eigen::MatrixXd M(d, d);
    VectorXd r(d);
    for (int k = 0; k < d; ++k) {
      M.row(k) = normals[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])].transpose();
      r(k) = offsets[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])];
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.isInvertible()) {
      const VectorXd x = lu.solve(r);
      const double fx = f.value(x);
      if (!std::isinf(fx)) best = std::max(best, v.dot(x) - fx);
    }
    int k = d - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == m - d + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < d; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

}  // namespace oracle

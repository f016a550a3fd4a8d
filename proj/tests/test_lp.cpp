#include "doctest.h"

#include "infoprice/lp.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace infoprice::lp;

namespace {

LpProblem oneVar(double c, std::initializer_list<std::pair<double, double>> rows) {
  LpProblem p(1);
  p.c(0) = c;
  p.G.resize(static_cast<Eigen::Index>(rows.size()), 1);
  p.g.resize(static_cast<Eigen::Index>(rows.size()));
  Eigen::Index i = 0;
  for (auto [coef, rhs] : rows) {
    p.G(i, 0) = coef;
    p.g(i) = rhs;
    ++i;
  }
  return p;
}

// Brute-force vertex enumeration for 2-variable inequality LPs.
double vertexOracle(const LpProblem& p) {
  double best = std::numeric_limits<double>::infinity();
  const auto m = p.G.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      Eigen::Matrix2d M;
      M << p.G.row(i), p.G.row(j);
      if (std::abs(M.determinant()) < 1e-12) continue;
      const Eigen::Vector2d x = M.inverse() * (Eigen::Vector2d(p.g(i), p.g(j)));
      if (((p.G * x - p.g).array() <= 1e-9).all()) best = std::min(best, p.c.dot(x) + p.c0);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("maximize x on [0,3]") {
  const auto p = oneVar(-1.0, {{1.0, 3.0}, {-1.0, 0.0}});
  const auto s = solve(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.primal(0) == doctest::Approx(3.0));
  CHECK(s.objective == doctest::Approx(-3.0));
  CHECK(s.gap <= 1e-7);
  CHECK(checkCertificate(p, s).ok);
}

TEST_CASE("empty feasible set yields a Farkas certificate") {
  const auto p = oneVar(0.0, {{1.0, -1.0}, {-1.0, 0.0}});
  const auto s = solve(p);
  REQUIRE(s.status == LpStatus::Infeasible);
  const auto chk = checkCertificate(p, s);
  CHECK(chk.ok);
  CHECK(chk.farkas_value <= -1e-9);
  CHECK((s.farkas_u.array() >= 0.0).all());
}

TEST_CASE("unbounded problem returns an improving ray") {
  const auto p = oneVar(-1.0, {{-1.0, 0.0}});
  const auto s = solve(p);
  REQUIRE(s.status == LpStatus::Unbounded);
  CHECK(s.ray(0) == doctest::Approx(1.0));
  CHECK(checkCertificate(p, s).ok);
}

TEST_CASE("equality rows and free variables") {
  // min x + 2y  s.t.  x + y = 1, x - y <= 3, y >= -5
  LpProblem p(2);
  p.c << 1.0, 2.0;
  p.G.resize(2, 2);
  p.G << 1.0, -1.0, 0.0, -1.0;
  p.g.resize(2);
  p.g << 3.0, 5.0;
  p.A.resize(1, 2);
  p.A << 1.0, 1.0;
  p.a.resize(1);
  p.a << 1.0;
  const auto s = solve(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.primal(0) == doctest::Approx(2.0));
  CHECK(s.primal(1) == doctest::Approx(-1.0));
  CHECK(s.objective == doctest::Approx(0.0));
  CHECK(checkCertificate(p, s).ok);
}

TEST_CASE("redundant equality rows are tolerated") {
  LpProblem p(2);
  p.c << 1.0, 1.0;
  p.A.resize(3, 2);
  p.A << 1.0, -1.0, 2.0, -2.0, -1.0, 1.0;
  p.a = Eigen::VectorXd::Zero(3);
  p.G.resize(2, 2);
  p.G << -1.0, 0.0, 0.0, -1.0;
  p.g = -Eigen::VectorXd::Ones(2);
  const auto s = solve(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(2.0));
  CHECK(checkCertificate(p, s).ok);
}

TEST_CASE("no constraints") {
  LpProblem p(2);
  p.c0 = 4.0;
  auto s = solve(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(4.0));
  p.c << 0.0, 1.0;
  s = solve(p);
  REQUIRE(s.status == LpStatus::Unbounded);
  CHECK(checkCertificate(p, s).ok);
}

TEST_CASE("shape mismatch is rejected") {
  LpProblem p(2);
  p.G.resize(1, 3);
  p.g.resize(1);
  CHECK_THROWS(solve(p));
}

TEST_CASE("random 2-variable LPs agree with vertex enumeration") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int extra = 1 + trial % 5;
    LpProblem p(2);
    p.c << coef(rng), coef(rng);
    p.G.resize(4 + extra, 2);
    p.g.resize(4 + extra);
    // Box [-2,2]^2 keeps every instance bounded.
    p.G.topRows(4) << 1, 0, -1, 0, 0, 1, 0, -1;
    p.g.head(4).setConstant(2.0);
    for (int k = 0; k < extra; ++k) {
      p.G.row(4 + k) << coef(rng), coef(rng);
      p.g(4 + k) = coef(rng);
    }
    const auto s = solve(p);
    const double oracle = vertexOracle(p);
    if (std::isinf(oracle)) {
      CHECK(s.status == LpStatus::Infeasible);
    } else {
      REQUIRE(s.status == LpStatus::Optimal);
      CHECK(s.objective == doctest::Approx(oracle).epsilon(1e-9));
    }
    CHECK(checkCertificate(p, s).ok);
  }
}

TEST_CASE("identical inputs give identical outputs") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  LpProblem p(4);
  for (int j = 0; j < 4; ++j) p.c(j) = coef(rng);
  p.G = Eigen::MatrixXd::NullaryExpr(10, 4, [&] { return coef(rng); });
  p.g = Eigen::VectorXd::Ones(10);
  const auto a = solve(p);
  const auto b = solve(p);
  CHECK(a.status == b.status);
  CHECK(a.iterations == b.iterations);
  CHECK((a.primal - b.primal).norm() == 0.0);
}

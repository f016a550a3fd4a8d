#include "doctest.h"

#include "fixtures.hpp"

#include "infoprice/corpus.hpp"
#include "infoprice/dynprog.hpp"
#include "infoprice/errors.hpp"
#include "infoprice/shadow.hpp"

#include <cmath>
#include <random>

using namespace infoprice;
using fixture::randomProcess;

namespace {

Process scalarProcess(std::initializer_list<double> values) {
  Process x({1}, values.size());
  std::size_t w = 0;
  for (double v : values) x.at(0, w++)(0) = v;
  return x;
}

ProblemFile singleScenario(std::vector<int> dims, std::vector<AffinePiece> pieces) {
  ProblemFile f;
  int n = 0;
  for (int d : dims) n += d;
  f.dims = std::move(dims);
  f.scenarios = {{"w", 1.0}};
  f.partitions.assign(f.dims.size(), {{"w"}});
  IntegrandSpec s;
  s.pieces = std::move(pieces);
  s.G.resize(0, n);
  s.A.resize(0, n);
  f.integrands = {s};
  return f;
}

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("primal recursion on the two-stage instance") {
  const auto program = toProgram(corpus::twoStage());
  const auto table = primalRecursion(program);
  REQUIRE(table.h.size() == 2);
  CHECK(table.h[0].size() == 1);
  CHECK(table.h[1].size() == 2);
  CHECK(table.h_tilde[0].size() == 2);
  CHECK(std::abs(table.value) <= 1e-9);
  for (int i = 0; i < 10; ++i) {
    const double x0 = -2.5 + 0.55 * i;
    const VectorXd x = VectorXd::Constant(1, x0);
    CHECK(std::abs(evaluate(table.h[0][0], x) - std::abs(x0)) <= 1e-7);
    for (std::size_t w = 0; w < 2; ++w) {
      CHECK(std::abs(evaluate(table.h_tilde[0][w], x) - std::abs(x0)) <= 1e-7);
    }
  }
  // h_1 on a singleton atom is h itself.
  CHECK(evaluate(table.h[1][1], vec({1.0, 3.0})) == doctest::Approx(3.0));
}

TEST_CASE("primal recursion degenerate cases") {
  const auto c = toProgram(corpus::deterministic());
  const auto tc = primalRecursion(c);
  for (double x : {-2.0, 0.0, 0.5, 3.0}) {
    CHECK(evaluate(tc.h[0][0], VectorXd::Constant(1, x)) == doctest::Approx(std::abs(x)));
  }
  const auto a = toProgram(corpus::newsvendor());
  const auto ta = primalRecursion(a);
  CHECK(ta.value == doctest::Approx(1.0));
  CHECK(evaluate(ta.h[0][0], VectorXd::Constant(1, 3.0)) == doctest::Approx(2.0));
}

TEST_CASE("primal recursion detects a -inf partial minimum") {
  const auto program = toProgram(singleScenario({1, 1}, {{vec({0.0, 1.0}), 0.0}}));
  CHECK_THROWS_AS(primalRecursion(program), Error);
  try {
    primalRecursion(program);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ImproperRecursion);
    CHECK(std::string(e.what()).find("stage 1") != std::string::npos);
  }
  CHECK_FALSE(linealityCheck(program).linear);
}

TEST_CASE("lineality check") {
  auto r = linealityCheck(toProgram(corpus::newsvendor()));
  CHECK(r.linear);
  CHECK(r.proper);

  // max(x, 0): the recession cone is {x <= 0}.
  r = linealityCheck(toProgram(singleScenario({1}, {{vec({1.0}), 0.0}, {vec({0.0}), 0.0}})));
  CHECK_FALSE(r.linear);
  CHECK(r.strict_rows > 0);
  CHECK(r.witness.at(0, 0)(0) < 0.0);

  // Constant function: the cone is the whole line.
  r = linealityCheck(toProgram(singleScenario({1}, {{vec({0.0}), 1.0}})));
  CHECK(r.linear);

  // Bounded domains give the zero cone.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(linealityCheck(toProgram(corpus::random(seed))).linear);

  // Two scenarios whose recession cones cancel: max(x,0) and max(-x,0).
  auto f = corpus::newsvendor();
  f.integrands[0].pieces = {{vec({1.0}), 0.0}, {vec({0.0}), 0.0}};
  f.integrands[1].pieces = {{vec({-1.0}), 0.0}, {vec({0.0}), 0.0}};
  CHECK(linealityCheck(toProgram(f)).linear);
  f.partitions = {{{"w1"}, {"w2"}}};
  CHECK_FALSE(linealityCheck(toProgram(f)).linear);
}

TEST_CASE("verifyPrimalDP") {
  const auto program = toProgram(corpus::twoStage());
  const auto table = primalRecursion(program);
  Process x({1, 1}, 2);
  x.at(1, 0)(0) = 0.0;
  x.at(1, 1)(0) = 2.0;
  auto r = verifyPrimalDP(program, table, x);
  CHECK(r.optimal);
  CHECK(std::abs(r.stage_values[0]) <= 1e-9);
  CHECK(std::abs(r.stage_values[1]) <= 1e-9);
  for (const auto& row : r.argmin) {
    for (double v : row) CHECK(std::abs(v) <= 1e-9);
  }

  x.at(0, 0)(0) = 1.0;
  x.at(0, 1)(0) = 1.0;
  r = verifyPrimalDP(program, table, x);
  CHECK_FALSE(r.optimal);
  CHECK(r.inequalities_hold);
  CHECK(r.stage_values[0] == doctest::Approx(1.0));
}

TEST_CASE("dual recursion on the newsvendor") {
  const auto program = toProgram(corpus::newsvendor());
  const auto table = dualRecursion(program);
  REQUIRE(table.g.size() == 1);
  CHECK(evaluate(table.g[0][0], VectorXd::Zero(1)) == doctest::Approx(-1.0));
  CHECK(table.dual_value == doctest::Approx(-1.0));
  // (E h)*(s) = max over the breakpoints {0, 2} of s x - 1 for |s| <= 1.
  for (double s : {-1.0, -0.5, 0.25, 1.0}) {
    const double expect = std::max(0.0, 2.0 * s) - 1.0;
    CHECK(evaluate(table.g[0][0], VectorXd::Constant(1, s)) == doctest::Approx(expect));
  }
  CHECK(std::isinf(evaluate(table.g[0][0], VectorXd::Constant(1, 1.5))));

  // Perfect information: g_0 = h* per scenario.
  const auto d = dualRecursion(toProgram(corpus::perfectInformation()));
  REQUIRE(d.g[0].size() == 2);
  CHECK(evaluate(d.g[0][1], VectorXd::Constant(1, 0.5)) == doctest::Approx(1.0));
  CHECK(evaluate(d.g[0][0], VectorXd::Constant(1, 0.5)) == doctest::Approx(0.0));

  const auto c = dualRecursion(toProgram(corpus::deterministic()));
  CHECK(evaluate(c.g[0][0], VectorXd::Constant(1, 0.3)) == doctest::Approx(0.0));
  CHECK(std::isinf(evaluate(c.g[0][0], VectorXd::Constant(1, 1.3))));
}

TEST_CASE("verifyDualDP on the newsvendor") {
  const auto program = toProgram(corpus::newsvendor());
  const auto table = dualRecursion(program);
  auto r = verifyDualDP(program, table, scalarProcess({1.0, 1.0}), scalarProcess({1.0, -1.0}));
  CHECK(r.optimal);
  CHECK(r.stage_values[0] == doctest::Approx(-1.0));
  CHECK(std::abs(r.margins[0]) <= 1e-9);
  CHECK(std::abs(r.fenchel_sums[0]) <= 1e-9);

  // x0 = 3, v = 0: E_0 h(3) = (3 + 1) / 2 = 2 and g_0(0) = -1.
  r = verifyDualDP(program, table, scalarProcess({3.0, 3.0}), scalarProcess({0.0, 0.0}));
  CHECK(std::abs(r.margins[0]) <= 1e-9);
  CHECK(r.fenchel_sums[0] == doctest::Approx(1.0));
  CHECK_FALSE(r.optimal);
}

TEST_CASE("recursions agree with the LP solutions on random instances") {
  std::mt19937 rng(7);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    CAPTURE(seed);
    const auto program = toProgram(corpus::random(seed));
    auto table = primalRecursion(program);
    dualRecursion(program, table);
    const auto primal = solvePrimal(program);
    const auto dual = solveDual(program);
    REQUIRE(primal.status == lp::LpStatus::Optimal);
    CHECK(std::abs(table.value - primal.value) <= 1e-7);
    CHECK(std::abs(table.dual_value + primal.value) <= 1e-7);

    // g_t* = h_t.
    for (std::size_t t = 0; t < program.numStages(); ++t) {
      for (std::size_t k = 0; k < table.g[t].size(); ++k) {
        const auto star = conjugate(table.g[t][k]);
        for (int i = 0; i < 3; ++i) {
          const VectorXd x = randomProcess(program, rng, 0.45).truncated(0, t);
          CHECK(std::abs(evaluate(star, x) - evaluate(table.h[t][k], x)) <= 1e-6);
        }
      }
    }

    const auto p = verifyPrimalDP(program, table, primal.x);
    CHECK(p.optimal);
    const auto d = verifyDualDP(program, table, primal.x, dual.v);
    CHECK(d.optimal);
    for (double m : d.margins) CHECK(std::abs(m) <= 1e-6);

    for (int i = 0; i < 3; ++i) {
      const auto x = adaptedProjection(program.space(), randomProcess(program, rng, 0.45));
      CHECK(verifyPrimalDP(program, table, x).inequalities_hold);
      const auto v = annihilatorPart(program.space(), randomProcess(program, rng, 2.0));
      CHECK(verifyDualDP(program, table, x, v).inequalities_hold);
    }
  }
}

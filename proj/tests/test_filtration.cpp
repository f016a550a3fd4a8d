#include "doctest.h"

#include "infoprice/errors.hpp"
#include "infoprice/filtration.hpp"

#include <random>

using namespace infoprice;

namespace {

FilteredSpace twoScenario(double p1, double p2, bool discrete_first = false) {
  std::vector<Scenario> sc{{"w1", p1}, {"w2", p2}};
  if (discrete_first) return FilteredSpace::build(sc, {{{"w1"}, {"w2"}}});
  return FilteredSpace::build(sc, {{{"w1", "w2"}}, {{"w1"}, {"w2"}}});
}

// Four scenarios, three stages: {1234} -> {12}{34} -> discrete.
FilteredSpace fourScenario() {
  std::vector<Scenario> sc{{"a", 0.1}, {"b", 0.2}, {"c", 0.3}, {"d", 0.4}};
  return FilteredSpace::build(
      sc, {{{"a", "b", "c", "d"}}, {{"a", "b"}, {"c", "d"}}, {{"a"}, {"b"}, {"c"}, {"d"}}});
}

ErrorKind kindOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an infoprice::Error");
  return ErrorKind::ParseError;
}

Process randomProcess(const std::vector<int>& dims, std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Process x(dims, n);
  for (std::size_t t = 0; t < dims.size(); ++t) {
    for (std::size_t w = 0; w < n; ++w) {
      for (int k = 0; k < dims[t]; ++k) x.at(t, w)(k) = u(rng);
    }
  }
  return x;
}

ScenarioVectors scalars(std::initializer_list<double> values) {
  ScenarioVectors out;
  for (double v : values) out.push_back(VectorXd::Constant(1, v));
  return out;
}

}  // namespace

TEST_CASE("buildSpace accepts the minimal tree") {
  const auto s = twoScenario(0.5, 0.5);
  CHECK(s.numStages() == 2);
  CHECK(s.partition(0).numAtoms() == 1);
  CHECK(s.partition(1).numAtoms() == 2);
}

TEST_CASE("buildSpace validation errors") {
  CHECK(kindOf([] { twoScenario(0.5, 0.6); }) == ErrorKind::BadProbabilities);
  CHECK(kindOf([] { twoScenario(1.0, 0.0); }) == ErrorKind::BadProbabilities);
  CHECK(kindOf([] {
          FilteredSpace::build({{"w1", 0.5}, {"w2", 0.5}}, {{{"w1"}, {"w2"}}, {{"w1", "w2"}}});
        }) == ErrorKind::NonNestedPartition);
  CHECK(kindOf([] { FilteredSpace::build({{"w1", 0.5}, {"w2", 0.5}}, {{{"w1"}}}); }) ==
        ErrorKind::OrphanScenario);
  CHECK(kindOf([] {
          FilteredSpace::build({{"w1", 0.5}, {"w2", 0.5}}, {{{"w1", "w2"}, {"w2"}}});
        }) == ErrorKind::OrphanScenario);
}

TEST_CASE("validation messages name the offending stage") {
  try {
    FilteredSpace::build({{"w1", 0.5}, {"w2", 0.5}}, {{{"w1"}, {"w2"}}, {{"w1", "w2"}}});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("stage 1 atom 0") != std::string::npos);
  }
}

TEST_CASE("condExp examples") {
  const auto s = twoScenario(0.5, 0.5);
  auto out = condExp(s, 0, scalars({3, 1}));
  CHECK(out[0](0) == doctest::Approx(2.0));
  CHECK(out[1](0) == doctest::Approx(2.0));
  out = condExp(s, 1, scalars({3, 1}));
  CHECK(out[0](0) == 3.0);
  CHECK(out[1](0) == 1.0);

  const auto skew = twoScenario(0.25, 0.75);
  out = condExp(skew, 0, scalars({4, 0}));
  CHECK(out[0](0) == doctest::Approx(1.0));
  CHECK(out[1](0) == doctest::Approx(1.0));
}

TEST_CASE("adaptedProjection examples") {
  const auto s = twoScenario(0.5, 0.5, /*discrete_first=*/false);
  const auto single = FilteredSpace::build({{"w1", 0.5}, {"w2", 0.5}}, {{{"w1", "w2"}}});
  Process x({1}, 2);
  x.at(0, 0)(0) = 3.0;
  x.at(0, 1)(0) = 1.0;
  const auto px = adaptedProjection(single, x);
  CHECK(px.at(0, 0)(0) == doctest::Approx(2.0));
  CHECK(px.at(0, 1)(0) == doctest::Approx(2.0));
  CHECK(isAdapted(single, px));
  // Adapted processes are fixed.
  CHECK((adaptedProjection(single, px) - px).flatten(0).norm() == 0.0);
  (void)s;
}

TEST_CASE("isAdapted") {
  const auto s = fourScenario();
  Process x({1, 1, 1}, 4);
  CHECK(isAdapted(s, x));
  x.at(1, 0)(0) = 1.0;  // a and b share a stage-1 atom
  CHECK_FALSE(isAdapted(s, x));
  const auto disc = FilteredSpace::build({{"a", 0.5}, {"b", 0.5}}, {{{"a"}, {"b"}}});
  std::mt19937 rng(1);
  CHECK(isAdapted(disc, randomProcess({2}, 2, rng)));
}

TEST_CASE("inAnnihilator and pairing on the two-scenario newsvendor space") {
  const auto s = FilteredSpace::build({{"w1", 0.5}, {"w2", 0.5}}, {{{"w1", "w2"}}});
  Process v({1}, 2);
  auto r = inAnnihilator(s, v);
  CHECK(r.member);
  CHECK(r.residual == 0.0);
  v.at(0, 0)(0) = 1.0;
  v.at(0, 1)(0) = -1.0;
  CHECK(inAnnihilator(s, v).member);
  Process z({1}, 2);
  z.at(0, 0)(0) = 1.0;
  CHECK(pairing(s, z, v) == doctest::Approx(0.5));
  CHECK(pairing(s, z, Process({1}, 2)) == 0.0);
  v.at(0, 1)(0) = 1.0;
  r = inAnnihilator(s, v);
  CHECK_FALSE(r.member);
  CHECK(r.residual == doctest::Approx(1.0));
}

TEST_CASE("tower property, projection laws and annihilator pairing") {
  const auto s = fourScenario();
  std::mt19937 rng(11);
  const std::vector<int> dims{1, 2, 1};
  for (int trial = 0; trial < 25; ++trial) {
    const auto x = randomProcess(dims, 4, rng);
    const auto y = randomProcess(dims, 4, rng);
    // Tower: E_s E_t w = E_s w for s <= t.
    for (std::size_t t = 0; t < 3; ++t) {
      for (std::size_t r = 0; r <= t; ++r) {
        const auto lhs = condExp(s, r, condExp(s, t, x.stage(1)));
        const auto rhs = condExp(s, r, x.stage(1));
        for (std::size_t w = 0; w < 4; ++w) CHECK((lhs[w] - rhs[w]).norm() <= 1e-12);
      }
    }
    const auto px = adaptedProjection(s, x);
    const auto ppx = adaptedProjection(s, px);
    const auto lin = adaptedProjection(s, x * 2.0 + y) - (px * 2.0 + adaptedProjection(s, y));
    for (std::size_t w = 0; w < 4; ++w) {
      CHECK((ppx.flatten(w) - px.flatten(w)).norm() <= 1e-12);
      CHECK(lin.flatten(w).norm() <= 1e-12);
    }
    // <z - az, u> = 0 for adapted u.
    const auto u = adaptedProjection(s, y);
    CHECK(std::abs(pairing(s, x - px, u)) <= 1e-12);
    // v - av lies in the annihilator and pairs to zero with adapted processes.
    const auto v = annihilatorPart(s, y);
    CHECK(inAnnihilator(s, v, 1e-12).member);
    CHECK(std::abs(pairing(s, u, v)) <= 1e-12);
  }
}

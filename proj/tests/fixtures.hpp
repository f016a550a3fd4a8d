#pragma once

// Seeded random spaces, families and processes shared by the unit tests and
// the acceptance run.

#include "oracles.hpp"

#include "infoprice/integrand.hpp"
#include "infoprice/program.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixture {

using namespace infoprice;

/// n scenarios with integer weights 1..9 and a single discrete stage.
inline FilteredSpace randomSpace(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> weight(1, 9);
  std::vector<int> ws;
  int total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ws.push_back(weight(rng));
    total += ws.back();
  }
  std::vector<Scenario> scen;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p = static_cast<double>(ws[i]) / total;
    if (i + 1 == n) p = 1.0 - acc;
    acc += p;
    scen.push_back({"s" + std::to_string(i), p});
  }
  return FilteredSpace::build(scen, std::vector<Partition>{Partition::discrete(n)});
}

inline Partition randomPartition(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> label(0, n - 1);
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t s = 0; s < n; ++s) groups[label(rng)].push_back(s);
  std::vector<std::vector<std::size_t>> atoms;
  for (auto& g : groups) {
    if (!g.empty()) atoms.push_back(g);
  }
  return Partition(atoms, n);
}

struct RandomFamily {
  std::vector<oracle::BoxedMaxAffine> oracles;
  IntegrandFamily family;
  Partition G;
};

/// 1..5 scenarios of boxed max-affine functions and a random sub-partition.
/// With `measurable` the function only depends on the G-atom.
inline RandomFamily randomFamily(int dim, std::mt19937& rng, bool measurable = false) {
  std::uniform_int_distribution<std::size_t> count(1, 5);
  const auto n = count(rng);
  auto space = randomSpace(n, rng);
  auto G = randomPartition(n, rng);
  std::vector<oracle::BoxedMaxAffine> oracles(n);
  for (std::size_t k = 0; k < G.numAtoms(); ++k) {
    const auto base = oracle::randomBoxedMaxAffine(dim, rng, 3);
    for (auto s : G.atom(k)) oracles[s] = measurable ? base : oracle::randomBoxedMaxAffine(dim, rng, 3);
  }
  std::vector<PolyFun> fs;
  for (const auto& o : oracles) fs.push_back(o.build());
  return {oracles, IntegrandFamily(std::move(space), std::move(fs)), G};
}

inline ScenarioVectors randomVectors(std::size_t n, int dim, std::mt19937& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  ScenarioVectors out;
  for (std::size_t i = 0; i < n; ++i) {
    VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v(j) = u(rng);
    out.push_back(v);
  }
  return out;
}

/// Uniform in [-r, r] in every coordinate; neither adapted nor in N-perp.
inline Process randomProcess(const StochasticProgram& program, std::mt19937& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  Process z(program.stageDims(), program.numScenarios());
  for (std::size_t t = 0; t < program.numStages(); ++t) {
    for (std::size_t w = 0; w < program.numScenarios(); ++w) {
      for (int j = 0; j < program.stageDims()[t]; ++j) z.at(t, w)(j) = u(rng);
    }
  }
  return z;
}

}  // namespace fixture

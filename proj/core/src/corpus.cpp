#include "infoprice/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace infoprice::corpus {

namespace {

VectorXd scalar(double v) { return VectorXd::Constant(1, v); }

IntegrandSpec absShift(double d) {
  IntegrandSpec s;
  s.pieces = {{scalar(1.0), -d}, {scalar(-1.0), d}};
  s.G.resize(0, 1);
  s.g.resize(0);
  s.A.resize(0, 1);
  s.a.resize(0);
  return s;
}

IntegrandSpec twoStageIntegrand(double d) {
  // |x0| + |x0 + x1 - d| as the max of the four sign combinations.
  IntegrandSpec s;
  auto piece = [](double a, double b, double c) {
    VectorXd slope(2);
    slope << a, b;
    return AffinePiece{slope, c};
  };
  s.pieces = {piece(2, 1, -d), piece(0, -1, d), piece(0, 1, -d), piece(-2, -1, d)};
  s.G.resize(0, 2);
  s.g.resize(0);
  s.A.resize(0, 2);
  s.a.resize(0);
  return s;
}

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

}  // namespace

ProblemFile newsvendor() {
  ProblemFile f;
  f.dims = {1};
  f.scenarios = {{"w1", 0.5}, {"w2", 0.5}};
  f.partitions = {{{"w1", "w2"}}};
  f.integrands = {absShift(0.0), absShift(2.0)};
  return f;
}

ProblemFile twoStage() {
  ProblemFile f;
  f.dims = {1, 1};
  f.scenarios = {{"w1", 0.5}, {"w2", 0.5}};
  f.partitions = {{{"w1", "w2"}}, {{"w1"}, {"w2"}}};
  f.integrands = {twoStageIntegrand(0.0), twoStageIntegrand(2.0)};
  return f;
}

ProblemFile deterministic() {
  ProblemFile f;
  f.dims = {1};
  f.scenarios = {{"w1", 1.0}};
  f.partitions = {{{"w1"}}};
  f.integrands = {absShift(0.0)};
  return f;
}

ProblemFile perfectInformation() {
  ProblemFile f = newsvendor();
  f.partitions = {{{"w1"}, {"w2"}}};
  return f;
}

ProblemFile random(std::uint64_t seed, const RandomOptions& options) {
  std::mt19937_64 rng(seed);
  auto uniformInt = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

  ProblemFile f;
  const int stages = uniformInt(1, options.max_stages);
  const int n_scen = uniformInt(std::min(2, options.max_scenarios), options.max_scenarios);
  for (int t = 0; t < stages; ++t) f.dims.push_back(uniformInt(1, options.max_stage_dim));

  std::vector<int> weights;
  int total = 0;
  for (int s = 0; s < n_scen; ++s) {
    weights.push_back(uniformInt(1, 9));
    total += weights.back();
  }
  double acc = 0.0;
  for (int s = 0; s < n_scen; ++s) {
    double p = static_cast<double>(weights[static_cast<std::size_t>(s)]) / total;
    if (s + 1 == n_scen) p = 1.0 - acc;
    acc += p;
    f.scenarios.push_back({"s" + std::to_string(s), p});
  }

  // Stage 0 is trivial; later stages split every atom into contiguous runs.
  std::vector<std::vector<int>> atoms{{}};
  for (int s = 0; s < n_scen; ++s) atoms.front().push_back(s);
  const bool discrete_last = uniform(0.0, 1.0) < 0.7;
  for (int t = 0; t < stages; ++t) {
    if (t > 0) {
      std::vector<std::vector<int>> next;
      for (const auto& atom : atoms) {
        const bool last = t + 1 == stages && discrete_last;
        std::vector<int> cur;
        for (std::size_t i = 0; i < atom.size(); ++i) {
          cur.push_back(atom[i]);
          const bool cut = last || uniform(0.0, 1.0) < 0.5;
          if (cut || i + 1 == atom.size()) {
            next.push_back(cur);
            cur.clear();
          }
        }
      }
      atoms = std::move(next);
    }
    std::vector<std::vector<std::string>> named;
    for (const auto& atom : atoms) {
      std::vector<std::string> ids;
      for (int s : atom) ids.push_back(f.scenarios[static_cast<std::size_t>(s)].id);
      named.push_back(std::move(ids));
    }
    f.partitions.push_back(std::move(named));
  }

  int n = 0;
  for (int d : f.dims) n += d;
  for (int s = 0; s < n_scen; ++s) {
    IntegrandSpec spec;
    const int k = uniformInt(1, options.max_pieces);
    for (int i = 0; i < k; ++i) {
      VectorXd slope(n);
      for (int j = 0; j < n; ++j) slope(j) = round3(uniform(-2.0, 2.0));
      spec.pieces.push_back({slope, round3(uniform(-1.0, 1.0))});
    }
    spec.G = MatrixXd::Zero(2 * n, n);
    spec.g.resize(2 * n);
    for (int j = 0; j < n; ++j) {
      spec.G(2 * j, j) = 1.0;
      spec.G(2 * j + 1, j) = -1.0;
      spec.g(2 * j) = round3(uniform(0.5, 3.0));
      spec.g(2 * j + 1) = round3(uniform(0.5, 3.0));
    }
    spec.A.resize(0, n);
    spec.a.resize(0);
    f.integrands.push_back(std::move(spec));
  }
  return f;
}

std::vector<NamedInstance> bundled(int random_count, std::uint64_t base_seed) {
  std::vector<NamedInstance> out{{"INST-A", newsvendor()},
                                 {"INST-B", twoStage()},
                                 {"INST-C", deterministic()},
                                 {"INST-D", perfectInformation()}};
  for (int i = 0; i < random_count; ++i) {
    const auto seed = base_seed + static_cast<std::uint64_t>(i);
    out.push_back({"RAND-" + std::to_string(seed), random(seed)});
  }
  return out;
}

}  // namespace infoprice::corpus

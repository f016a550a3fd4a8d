#pragma once

#include "infoprice/problem_file.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace infoprice::corpus {

/// Two-scenario newsvendor: T = 0, n_0 = 1, p = (1/2, 1/2), F_0 trivial,
/// h(x, omega) = |x - d(omega)| with d = (0, 2).
ProblemFile newsvendor();

/// Two-stage: n = (1, 1), F_0 trivial, F_1 discrete,
/// h = |x_0| + |x_0 + x_1 - d(omega)| with d = (0, 2).
ProblemFile twoStage();

/// Single scenario, h = |x|.
ProblemFile deterministic();

/// The newsvendor integrand with F_0 discrete (perfect information).
ProblemFile perfectInformation();

struct RandomOptions {
  int max_stages = 3;     // T + 1 <= max_stages
  int max_scenarios = 6;
  int max_stage_dim = 2;
  int max_pieces = 3;
};

/// Bounded-domain instance: per scenario, a max-affine function plus the
/// indicator of a box containing the origin. Always feasible and bounded.
ProblemFile random(std::uint64_t seed, const RandomOptions& options = {});

struct NamedInstance {
  std::string name;
  ProblemFile file;
};

/// The four named instances followed by `random_count` seeded random ones.
std::vector<NamedInstance> bundled(int random_count = 20, std::uint64_t base_seed = 1000);

}  // namespace infoprice::corpus

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace infoprice {

using Eigen::VectorXd;

/// One real vector per scenario, indexed by scenario position.
using ScenarioVectors = std::vector<VectorXd>;

struct Scenario {
  std::string id;
  double probability = 0.0;
};

/// A partition of the scenario set {0, ..., N-1} into atoms.
class Partition {
 public:
  Partition() = default;
  /// Throws OrphanScenario if a scenario is missing or repeated, EmptyAtom
  /// for an empty atom.
  Partition(std::vector<std::vector<std::size_t>> atoms, std::size_t num_scenarios);

  static Partition trivial(std::size_t num_scenarios);
  static Partition discrete(std::size_t num_scenarios);

  std::size_t numAtoms() const { return atoms_.size(); }
  std::size_t numScenarios() const { return atom_of_.size(); }
  const std::vector<std::size_t>& atom(std::size_t k) const { return atoms_[k]; }
  const std::vector<std::vector<std::size_t>>& atoms() const { return atoms_; }
  std::size_t atomOf(std::size_t scenario) const { return atom_of_[scenario]; }

  /// True when every atom of *this lies inside one atom of `coarser`.
  bool refines(const Partition& coarser) const;

 private:
  std::vector<std::vector<std::size_t>> atoms_;
  std::vector<std::size_t> atom_of_;
};

/// Finite probability space with a filtration given by refining partitions,
/// one per stage t = 0..T. Immutable after construction.
class FilteredSpace {
 public:
  /// Atoms are given by scenario id. Validates every invariant and throws
  /// BadProbabilities, NonNestedPartition or OrphanScenario naming the
  /// offending stage/atom.
  static FilteredSpace build(std::vector<Scenario> scenarios,
                             const std::vector<std::vector<std::vector<std::string>>>& chain);
  static FilteredSpace build(std::vector<Scenario> scenarios, std::vector<Partition> chain);

  std::size_t numScenarios() const { return scenarios_.size(); }
  std::size_t numStages() const { return partitions_.size(); }
  std::size_t lastStage() const { return partitions_.size() - 1; }

  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  double probability(std::size_t scenario) const { return scenarios_[scenario].probability; }
  const Partition& partition(std::size_t t) const { return partitions_[t]; }

  /// P(A) for atom k of partition `part`.
  double atomProbability(const Partition& part, std::size_t k) const;
  double atomProbability(std::size_t t, std::size_t k) const {
    return atomProbability(partitions_[t], k);
  }

  /// Position of a scenario id, or throws OrphanScenario.
  std::size_t indexOf(const std::string& id) const;

 private:
  FilteredSpace() = default;
  std::vector<Scenario> scenarios_;
  std::vector<Partition> partitions_;
};

/// Values x_t(omega) in R^{n_t} for every stage t and scenario omega.
class Process {
 public:
  Process() = default;
  Process(std::vector<int> stage_dims, std::size_t num_scenarios);

  const std::vector<int>& stageDims() const { return dims_; }
  std::size_t numStages() const { return dims_.size(); }
  std::size_t numScenarios() const { return num_scenarios_; }
  /// n_0 + ... + n_t.
  int cumulativeDim(std::size_t t) const;
  int totalDim() const { return dims_.empty() ? 0 : cumulativeDim(dims_.size() - 1); }

  VectorXd& at(std::size_t t, std::size_t scenario) { return values_[t][scenario]; }
  const VectorXd& at(std::size_t t, std::size_t scenario) const { return values_[t][scenario]; }
  const ScenarioVectors& stage(std::size_t t) const { return values_[t]; }
  void setStage(std::size_t t, ScenarioVectors values);

  /// (x_0, ..., x_t)(omega) concatenated.
  VectorXd truncated(std::size_t scenario, std::size_t t) const;
  /// The full vector x(omega) in R^n.
  VectorXd flatten(std::size_t scenario) const { return truncated(scenario, dims_.size() - 1); }
  static Process fromFlat(const std::vector<int>& stage_dims, const ScenarioVectors& flat);

  Process operator+(const Process& other) const;
  Process operator-(const Process& other) const;
  Process operator*(double s) const;

 private:
  void checkCompatible(const Process& other) const;
  std::vector<int> dims_;
  std::size_t num_scenarios_ = 0;
  std::vector<ScenarioVectors> values_;  // [t][omega]
};

/// Conditional expectation on the atoms of `part`, constant on each atom.
ScenarioVectors condExp(const FilteredSpace& space, const Partition& part, const ScenarioVectors& w);
ScenarioVectors condExp(const FilteredSpace& space, std::size_t t, const ScenarioVectors& w);

/// (x_t -> E_t x_t) stage by stage.
Process adaptedProjection(const FilteredSpace& space, const Process& x);

/// x - adaptedProjection(x); always passes inAnnihilator.
Process annihilatorPart(const FilteredSpace& space, const Process& x);

bool isAdapted(const FilteredSpace& space, const Process& x, double tol = 1e-9);

/// Same test for a single stage-like field against an arbitrary partition.
bool isMeasurable(const Partition& part, const ScenarioVectors& w, double tol = 1e-9);

struct AnnihilatorTest {
  bool member = false;
  double residual = 0.0;
};

/// v is in the annihilator of adapted processes iff E_t v_t = 0 on every atom.
AnnihilatorTest inAnnihilator(const FilteredSpace& space, const Process& v, double tol = 1e-9);

/// E[ sum_t z_t · v_t ].
double pairing(const FilteredSpace& space, const Process& z, const Process& v);

}  // namespace infoprice

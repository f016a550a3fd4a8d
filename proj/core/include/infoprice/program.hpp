#pragma once

#include "infoprice/filtration.hpp"
#include "infoprice/polyfun.hpp"

#include <vector>

namespace infoprice {

/// minimize E h(x) over adapted x, with h(., omega) given scenario-wise.
class StochasticProgram {
 public:
  /// Throws DimensionMismatch unless there is one integrand per scenario,
  /// one stage dimension per stage and every integrand has dimension
  /// n_0 + ... + n_T.
  StochasticProgram(FilteredSpace space, std::vector<int> stage_dims,
                    std::vector<PolyFun> integrands);

  const FilteredSpace& space() const { return space_; }
  const std::vector<int>& stageDims() const { return dims_; }
  const std::vector<PolyFun>& integrands() const { return h_; }
  const PolyFun& integrand(std::size_t scenario) const { return h_[scenario]; }

  std::size_t numStages() const { return dims_.size(); }
  std::size_t numScenarios() const { return space_.numScenarios(); }
  int totalDim() const;
  /// n_0 + ... + n_t.
  int cumulativeDim(std::size_t t) const;
  /// Offset of stage t inside the flat vector x(omega).
  int stageOffset(std::size_t t) const { return t == 0 ? 0 : cumulativeDim(t - 1); }

 private:
  FilteredSpace space_;
  std::vector<int> dims_;
  std::vector<PolyFun> h_;
};

/// Variable layout for adapted processes: one block of n_t variables per
/// stage-t atom. Adaptedness is structural.
class AdaptedLayout {
 public:
  AdaptedLayout(const FilteredSpace& space, const std::vector<int>& stage_dims);

  Eigen::Index size() const { return size_; }
  Eigen::Index offset(std::size_t t, std::size_t atom) const { return offsets_[t][atom]; }
  /// M with x(omega) = M u (all stages concatenated).
  MatrixXd scenarioMap(std::size_t scenario) const;
  Process toProcess(const VectorXd& u) const;
  VectorXd fromProcess(const Process& x) const;

 private:
  FilteredSpace space_;
  std::vector<int> dims_;
  std::vector<std::vector<Eigen::Index>> offsets_;
  Eigen::Index size_ = 0;
};

/// Variable layout for general processes: x(omega) occupies the block
/// [omega * n, (omega + 1) * n).
class ScenarioLayout {
 public:
  ScenarioLayout(std::size_t num_scenarios, std::vector<int> stage_dims);

  Eigen::Index size() const { return static_cast<Eigen::Index>(num_scenarios_) * n_; }
  Eigen::Index offset(std::size_t scenario) const { return static_cast<Eigen::Index>(scenario) * n_; }
  MatrixXd scenarioMap(std::size_t scenario) const;
  Process toProcess(const VectorXd& u) const;
  VectorXd fromProcess(const Process& x) const;

 private:
  std::size_t num_scenarios_;
  std::vector<int> dims_;
  Eigen::Index n_ = 0;
};

/// Rows enforcing E_t v_t = 0 on every atom, written as
/// sum_{omega in A} p(omega) v_t(omega) = 0 over a ScenarioLayout.
MatrixXd annihilatorRows(const FilteredSpace& space, const std::vector<int>& stage_dims);

}  // namespace infoprice

#include "infoprice/program.hpp"

#include "infoprice/errors.hpp"

#include <numeric>
#include <string>

namespace infoprice {

StochasticProgram::StochasticProgram(FilteredSpace space, std::vector<int> stage_dims,
                                     std::vector<PolyFun> integrands)
    : space_(std::move(space)), dims_(std::move(stage_dims)), h_(std::move(integrands)) {
  if (dims_.size() != space_.numStages()) {
    throw Error(ErrorKind::DimensionMismatch,
                "program has " + std::to_string(dims_.size()) + " stage dimensions but " +
                    std::to_string(space_.numStages()) + " stages");
  }
  for (int d : dims_) {
    if (d < 0) throw Error(ErrorKind::DimensionMismatch, "negative stage dimension");
  }
  if (h_.size() != space_.numScenarios()) {
    throw Error(ErrorKind::DimensionMismatch,
                "program needs one integrand per scenario (" +
                    std::to_string(space_.numScenarios()) + "), got " + std::to_string(h_.size()));
  }
  for (std::size_t w = 0; w < h_.size(); ++w) {
    if (h_[w].dim() != totalDim()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "integrand of scenario '" + space_.scenarios()[w].id + "' has dimension " +
                      std::to_string(h_[w].dim()) + ", expected " + std::to_string(totalDim()));
    }
  }
}

int StochasticProgram::totalDim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

int StochasticProgram::cumulativeDim(std::size_t t) const {
  return std::accumulate(dims_.begin(), dims_.begin() + static_cast<std::ptrdiff_t>(t + 1), 0);
}

// ---------------------------------------------------------------------------

AdaptedLayout::AdaptedLayout(const FilteredSpace& space, const std::vector<int>& stage_dims)
    : space_(space), dims_(stage_dims) {
  offsets_.resize(dims_.size());
  for (std::size_t t = 0; t < dims_.size(); ++t) {
    for (std::size_t k = 0; k < space.partition(t).numAtoms(); ++k) {
      offsets_[t].push_back(size_);
      size_ += dims_[t];
    }
  }
}

MatrixXd AdaptedLayout::scenarioMap(std::size_t scenario) const {
  const int n = std::accumulate(dims_.begin(), dims_.end(), 0);
  MatrixXd M = MatrixXd::Zero(n, size_);
  Eigen::Index row = 0;
  for (std::size_t t = 0; t < dims_.size(); ++t) {
    const auto atom = space_.partition(t).atomOf(scenario);
    M.block(row, offsets_[t][atom], dims_[t], dims_[t]).setIdentity();
    row += dims_[t];
  }
  return M;
}

Process AdaptedLayout::toProcess(const VectorXd& u) const {
  Process x(dims_, space_.numScenarios());
  for (std::size_t t = 0; t < dims_.size(); ++t) {
    for (std::size_t w = 0; w < space_.numScenarios(); ++w) {
      x.at(t, w) = u.segment(offsets_[t][space_.partition(t).atomOf(w)], dims_[t]);
    }
  }
  return x;
}

VectorXd AdaptedLayout::fromProcess(const Process& x) const {
  VectorXd u(size_);
  for (std::size_t t = 0; t < dims_.size(); ++t) {
    const auto& part = space_.partition(t);
    for (std::size_t k = 0; k < part.numAtoms(); ++k) {
      u.segment(offsets_[t][k], dims_[t]) = x.at(t, part.atom(k).front());
    }
  }
  return u;
}

ScenarioLayout::ScenarioLayout(std::size_t num_scenarios, std::vector<int> stage_dims)
    : num_scenarios_(num_scenarios),
      dims_(std::move(stage_dims)),
      n_(std::accumulate(dims_.begin(), dims_.end(), 0)) {}

MatrixXd ScenarioLayout::scenarioMap(std::size_t scenario) const {
  MatrixXd M = MatrixXd::Zero(n_, size());
  M.block(0, offset(scenario), n_, n_).setIdentity();
  return M;
}

Process ScenarioLayout::toProcess(const VectorXd& u) const {
  ScenarioVectors flat;
  for (std::size_t w = 0; w < num_scenarios_; ++w) flat.push_back(u.segment(offset(w), n_));
  return Process::fromFlat(dims_, flat);
}

VectorXd ScenarioLayout::fromProcess(const Process& x) const {
  VectorXd u(size());
  for (std::size_t w = 0; w < num_scenarios_; ++w) u.segment(offset(w), n_) = x.flatten(w);
  return u;
}

MatrixXd annihilatorRows(const FilteredSpace& space, const std::vector<int>& stage_dims) {
  const ScenarioLayout layout(space.numScenarios(), stage_dims);
  Eigen::Index rows = 0;
  for (std::size_t t = 0; t < stage_dims.size(); ++t) {
    rows += static_cast<Eigen::Index>(space.partition(t).numAtoms()) * stage_dims[t];
  }
  MatrixXd R = MatrixXd::Zero(rows, layout.size());
  Eigen::Index r = 0;
  Eigen::Index stage_off = 0;
  for (std::size_t t = 0; t < stage_dims.size(); ++t) {
    const auto& part = space.partition(t);
    for (std::size_t k = 0; k < part.numAtoms(); ++k) {
      for (int c = 0; c < stage_dims[t]; ++c, ++r) {
        for (auto w : part.atom(k)) R(r, layout.offset(w) + stage_off + c) = space.probability(w);
      }
    }
    stage_off += stage_dims[t];
  }
  return R;
}

}  // namespace infoprice

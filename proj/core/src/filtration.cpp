#include "infoprice/filtration.hpp"

#include "infoprice/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace infoprice {

namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

}  // namespace

Partition::Partition(std::vector<std::vector<std::size_t>> atoms, std::size_t num_scenarios)
    : atoms_(std::move(atoms)), atom_of_(num_scenarios, kUnassigned) {
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k].empty()) {
      throw Error(ErrorKind::EmptyAtom, "partition atom " + std::to_string(k) + " is empty");
    }
    for (auto s : atoms_[k]) {
      if (s >= num_scenarios) {
        throw Error(ErrorKind::OrphanScenario,
                    "atom " + std::to_string(k) + " names unknown scenario " + std::to_string(s));
      }
      if (atom_of_[s] != kUnassigned) {
        throw Error(ErrorKind::OrphanScenario, "scenario " + std::to_string(s) +
                                                   " appears in atoms " +
                                                   std::to_string(atom_of_[s]) + " and " +
                                                   std::to_string(k));
      }
      atom_of_[s] = k;
    }
  }
  for (std::size_t s = 0; s < num_scenarios; ++s) {
    if (atom_of_[s] == kUnassigned) {
      throw Error(ErrorKind::OrphanScenario,
                  "scenario " + std::to_string(s) + " belongs to no atom");
    }
  }
}

Partition Partition::trivial(std::size_t num_scenarios) {
  std::vector<std::size_t> all(num_scenarios);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Partition({all}, num_scenarios);
}

Partition Partition::discrete(std::size_t num_scenarios) {
  std::vector<std::vector<std::size_t>> atoms;
  for (std::size_t s = 0; s < num_scenarios; ++s) atoms.push_back({s});
  return Partition(std::move(atoms), num_scenarios);
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.numScenarios() != numScenarios()) return false;
  for (const auto& atom : atoms_) {
    const auto parent = coarser.atomOf(atom.front());
    for (auto s : atom) {
      if (coarser.atomOf(s) != parent) return false;
    }
  }
  return true;
}

FilteredSpace FilteredSpace::build(
    std::vector<Scenario> scenarios,
    const std::vector<std::vector<std::vector<std::string>>>& chain) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (!index.emplace(scenarios[i].id, i).second) {
      throw Error(ErrorKind::OrphanScenario, "duplicate scenario id '" + scenarios[i].id + "'");
    }
  }
  std::vector<Partition> parts;
  for (std::size_t t = 0; t < chain.size(); ++t) {
    std::vector<std::vector<std::size_t>> atoms;
    for (std::size_t k = 0; k < chain[t].size(); ++k) {
      std::vector<std::size_t> atom;
      for (const auto& id : chain[t][k]) {
        auto it = index.find(id);
        if (it == index.end()) {
          throw Error(ErrorKind::OrphanScenario, "stage " + std::to_string(t) + " atom " +
                                                     std::to_string(k) +
                                                     ": unknown scenario '" + id + "'");
        }
        atom.push_back(it->second);
      }
      atoms.push_back(std::move(atom));
    }
    try {
      parts.emplace_back(std::move(atoms), scenarios.size());
    } catch (const Error& e) {
      throw Error(e.kind(), "stage " + std::to_string(t) + ": " + e.what());
    }
  }
  return build(std::move(scenarios), std::move(parts));
}

FilteredSpace FilteredSpace::build(std::vector<Scenario> scenarios, std::vector<Partition> chain) {
  if (scenarios.empty()) {
    throw Error(ErrorKind::BadProbabilities, "scenario list is empty");
  }
  if (chain.empty()) {
    throw Error(ErrorKind::NonNestedPartition, "partition chain is empty");
  }
  double total = 0.0;
  for (const auto& s : scenarios) {
    if (!(s.probability > 0.0) || s.probability > 1.0) {
      throw Error(ErrorKind::BadProbabilities, "scenario '" + s.id + "' has probability " +
                                                   std::to_string(s.probability) +
                                                   " outside (0,1]");
    }
    total += s.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::BadProbabilities,
                "probabilities sum to " + std::to_string(total) + ", not 1");
  }
  for (std::size_t t = 0; t < chain.size(); ++t) {
    if (chain[t].numScenarios() != scenarios.size()) {
      throw Error(ErrorKind::OrphanScenario,
                  "stage " + std::to_string(t) + " partition covers " +
                      std::to_string(chain[t].numScenarios()) + " scenarios, expected " +
                      std::to_string(scenarios.size()));
    }
    if (t == 0) continue;
    const auto& finer = chain[t];
    const auto& coarser = chain[t - 1];
    for (std::size_t k = 0; k < finer.numAtoms(); ++k) {
      const auto& atom = finer.atom(k);
      const auto parent = coarser.atomOf(atom.front());
      for (auto s : atom) {
        if (coarser.atomOf(s) != parent) {
          throw Error(ErrorKind::NonNestedPartition,
                      "stage " + std::to_string(t) + " atom " + std::to_string(k) +
                          " straddles atoms of stage " + std::to_string(t - 1));
        }
      }
    }
  }
  FilteredSpace space;
  space.scenarios_ = std::move(scenarios);
  space.partitions_ = std::move(chain);
  return space;
}

double FilteredSpace::atomProbability(const Partition& part, std::size_t k) const {
  double p = 0.0;
  for (auto s : part.atom(k)) p += scenarios_[s].probability;
  return p;
}

std::size_t FilteredSpace::indexOf(const std::string& id) const {
  for (std::size_t i = 0; i < scenarios_.size(); ++i) {
    if (scenarios_[i].id == id) return i;
  }
  throw Error(ErrorKind::OrphanScenario, "unknown scenario '" + id + "'");
}

// ---------------------------------------------------------------------------

Process::Process(std::vector<int> stage_dims, std::size_t num_scenarios)
    : dims_(std::move(stage_dims)), num_scenarios_(num_scenarios) {
  values_.resize(dims_.size());
  for (std::size_t t = 0; t < dims_.size(); ++t) {
    if (dims_[t] < 0) throw Error(ErrorKind::DimensionMismatch, "negative stage dimension");
    values_[t].assign(num_scenarios, VectorXd::Zero(dims_[t]));
  }
}

int Process::cumulativeDim(std::size_t t) const {
  int d = 0;
  for (std::size_t s = 0; s <= t && s < dims_.size(); ++s) d += dims_[s];
  return d;
}

void Process::setStage(std::size_t t, ScenarioVectors values) {
  if (values.size() != num_scenarios_) {
    throw Error(ErrorKind::DimensionMismatch, "stage values cover the wrong number of scenarios");
  }
  for (const auto& v : values) {
    if (v.size() != dims_[t]) {
      throw Error(ErrorKind::DimensionMismatch,
                  "stage " + std::to_string(t) + " expects vectors of length " +
                      std::to_string(dims_[t]));
    }
  }
  values_[t] = std::move(values);
}

VectorXd Process::truncated(std::size_t scenario, std::size_t t) const {
  VectorXd out(cumulativeDim(t));
  Eigen::Index pos = 0;
  for (std::size_t s = 0; s <= t; ++s) {
    out.segment(pos, dims_[s]) = values_[s][scenario];
    pos += dims_[s];
  }
  return out;
}

Process Process::fromFlat(const std::vector<int>& stage_dims, const ScenarioVectors& flat) {
  Process x(stage_dims, flat.size());
  for (std::size_t w = 0; w < flat.size(); ++w) {
    if (flat[w].size() != x.totalDim()) {
      throw Error(ErrorKind::DimensionMismatch, "flat vector has length " +
                                                    std::to_string(flat[w].size()) +
                                                    ", expected " + std::to_string(x.totalDim()));
    }
    Eigen::Index pos = 0;
    for (std::size_t t = 0; t < stage_dims.size(); ++t) {
      x.values_[t][w] = flat[w].segment(pos, stage_dims[t]);
      pos += stage_dims[t];
    }
  }
  return x;
}

void Process::checkCompatible(const Process& other) const {
  if (dims_ != other.dims_ || num_scenarios_ != other.num_scenarios_) {
    throw Error(ErrorKind::DimensionMismatch, "processes have different shapes");
  }
}

Process Process::operator+(const Process& other) const {
  checkCompatible(other);
  Process out = *this;
  for (std::size_t t = 0; t < dims_.size(); ++t) {
    for (std::size_t w = 0; w < num_scenarios_; ++w) out.values_[t][w] += other.values_[t][w];
  }
  return out;
}

Process Process::operator-(const Process& other) const { return *this + other * -1.0; }

Process Process::operator*(double s) const {
  Process out = *this;
  for (auto& stage : out.values_) {
    for (auto& v : stage) v *= s;
  }
  return out;
}

// ---------------------------------------------------------------------------

ScenarioVectors condExp(const FilteredSpace& space, const Partition& part,
                        const ScenarioVectors& w) {
  if (w.size() != space.numScenarios() || part.numScenarios() != space.numScenarios()) {
    throw Error(ErrorKind::DimensionMismatch, "condExp: scenario count mismatch");
  }
  ScenarioVectors out(w.size());
  for (std::size_t k = 0; k < part.numAtoms(); ++k) {
    const auto& atom = part.atom(k);
    const double pa = space.atomProbability(part, k);
    VectorXd mean = VectorXd::Zero(w[atom.front()].size());
    for (auto s : atom) mean += (space.probability(s) / pa) * w[s];
    for (auto s : atom) out[s] = mean;
  }
  return out;
}

ScenarioVectors condExp(const FilteredSpace& space, std::size_t t, const ScenarioVectors& w) {
  return condExp(space, space.partition(t), w);
}

Process adaptedProjection(const FilteredSpace& space, const Process& x) {
  Process out(x.stageDims(), x.numScenarios());
  for (std::size_t t = 0; t < x.numStages(); ++t) out.setStage(t, condExp(space, t, x.stage(t)));
  return out;
}

Process annihilatorPart(const FilteredSpace& space, const Process& x) {
  return x - adaptedProjection(space, x);
}

bool isMeasurable(const Partition& part, const ScenarioVectors& w, double tol) {
  for (const auto& atom : part.atoms()) {
    const auto& ref = w[atom.front()];
    for (auto s : atom) {
      if (w[s].size() != ref.size()) return false;
      if (ref.size() > 0 && (w[s] - ref).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

bool isAdapted(const FilteredSpace& space, const Process& x, double tol) {
  for (std::size_t t = 0; t < x.numStages(); ++t) {
    if (!isMeasurable(space.partition(t), x.stage(t), tol)) return false;
  }
  return true;
}

AnnihilatorTest inAnnihilator(const FilteredSpace& space, const Process& v, double tol) {
  AnnihilatorTest out;
  for (std::size_t t = 0; t < v.numStages(); ++t) {
    const auto means = condExp(space, t, v.stage(t));
    for (const auto& m : means) {
      if (m.size() > 0) out.residual = std::max(out.residual, m.cwiseAbs().maxCoeff());
    }
  }
  out.member = out.residual <= tol;
  return out;
}

double pairing(const FilteredSpace& space, const Process& z, const Process& v) {
  if (z.stageDims() != v.stageDims()) {
    throw Error(ErrorKind::DimensionMismatch, "pairing: stage dimensions differ");
  }
  double total = 0.0;
  for (std::size_t w = 0; w < space.numScenarios(); ++w) {
    double inner = 0.0;
    for (std::size_t t = 0; t < z.numStages(); ++t) inner += z.at(t, w).dot(v.at(t, w));
    total += space.probability(w) * inner;
  }
  return total;
}

}  // namespace infoprice

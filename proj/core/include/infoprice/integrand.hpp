#pragma once

#include "infoprice/program.hpp"

#include <string>
#include <vector>

namespace infoprice {

/// Scenario-indexed polyhedral integrand f(., omega) of common dimension on a
/// finite probability space. Only the scenario probabilities of `space` are
/// used; sub-partitions are passed explicitly.
class IntegrandFamily {
 public:
  /// Throws DimensionMismatch unless there is one function per scenario and
  /// all share a dimension.
  IntegrandFamily(FilteredSpace space, std::vector<PolyFun> functions);
  explicit IntegrandFamily(const StochasticProgram& program);

  const FilteredSpace& space() const { return space_; }
  const std::vector<PolyFun>& functions() const { return f_; }
  const PolyFun& at(std::size_t scenario) const { return f_[scenario]; }
  std::size_t numScenarios() const { return f_.size(); }
  Eigen::Index dim() const { return f_.front().dim(); }

 private:
  FilteredSpace space_;
  std::vector<PolyFun> f_;
};

/// (E^G f)(., A) = sum_{omega in A} p(omega)/P(A) f(., omega), per atom of G.
std::vector<PolyFun> condExpIntegrand(const IntegrandFamily& family, const Partition& G);

/// ^G g = (E^G g*)* per atom. Throws ImproperFunction unless each g(., omega)
/// is proper.
std::vector<PolyFun> epiCondExp(const IntegrandFamily& family, const Partition& G,
                                const lp::LpTolerances& tol = {});

struct JensenAtom {
  double left = 0.0;   // (E^G f)*(E^G v)
  double right = 0.0;  // E^G f*(v), possibly +inf
  double margin = 0.0; // right - left
  bool holds = false;
};

struct JensenReport {
  std::vector<JensenAtom> atoms;
  bool holds = false;
};

JensenReport jensenCheck(const IntegrandFamily& family, const ScenarioVectors& v, const Partition& G,
                         double tol = 1e-7, const lp::LpTolerances& lp_tol = {});

struct ConjugateOnN {
  double value = 0.0;         // min over v in the annihilator of E f*(x* + v)
  Process v;                  // attaining shift
  double direct = 0.0;        // sup over adapted x of <x, x*> - E f(x)
  double discrepancy = 0.0;   // |value - direct|
  bool agree = false;         // discrepancy <= 1e-7
};

/// (E f)*(x*) on adapted processes, computed twice: as the attained infimum
/// over the annihilator and as a supremum over adapted strategies. Throws
/// Unattained when the infimum is not attained.
ConjugateOnN conjugateOnN(const StochasticProgram& program, const Process& xstar,
                          const lp::LpTolerances& tol = {});

struct SubdiffMembership {
  bool member = false;
  double objective = 0.0;  // E[f(x) + f*(w) - x.w] at the best selection
  Process witness;         // selection w with adapted projection x*
  std::string detail;
};

/// x* in the subdifferential of E f at adapted x, decided by one LP over
/// selections w of the scenario subdifferentials whose adapted projection is
/// x*.
SubdiffMembership subdiffOnN(const StochasticProgram& program, const Process& x,
                             const Process& xstar, double tol = 1e-7,
                             const lp::LpTolerances& lp_tol = {});

struct Thm5Atom {
  double value = 0.0;   // min over mean-zero v on A of E^G f*(x* + v)
  double direct = 0.0;  // (E^G f)*(x*) on A
  double error = 0.0;
};

struct Thm5Report {
  ScenarioVectors v;  // assembled; E^G v = 0
  std::vector<Thm5Atom> atoms;
  double max_error = 0.0;
  bool holds = false;
};

/// (E^G f)*(x*) = E^G f*(x* + v) with E^G v = 0, per atom. Throws
/// Unattained when an atom problem is not attained.
Thm5Report thm5Verify(const IntegrandFamily& family, const ScenarioVectors& xstar,
                      const Partition& G, double tol = 1e-6, const lp::LpTolerances& lp_tol = {});

/// Per-atom oracle for E^G of the set-valued map omega -> subdiff f(x, omega)
/// at a G-measurable x.
class CondExpSubdiffMap {
 public:
  /// Throws EmptySubdifferential when x(omega) is outside dom f(., omega).
  CondExpSubdiffMap(const IntegrandFamily& family, ScenarioVectors x, const Partition& G,
                    double tol = 1e-7, const lp::LpTolerances& lp_tol = {});

  std::size_t numAtoms() const { return G_.numAtoms(); }

  /// u in E^G subdiff f(x) on atom A: a selection with conditional mean u.
  SubdiffMembership contains(std::size_t atom, const VectorXd& u) const;
  /// sup { d.u : u in E^G subdiff f(x) on A }, possibly +inf.
  double support(std::size_t atom, const VectorXd& d) const;
  /// u in subdiff (E^G f)(x) on A, by Fenchel equality for the atom function.
  bool containsDirect(std::size_t atom, const VectorXd& u) const;

 private:
  IntegrandFamily family_;
  ScenarioVectors x_;
  Partition G_;
  double tol_;
  lp::LpTolerances lp_tol_;
  std::vector<double> fx_;
  std::vector<PolyFun> atom_fun_;
};

}  // namespace infoprice

#pragma once

#include "infoprice/program.hpp"

#include <string>
#include <vector>

namespace infoprice {

/// Primal tables h_t (per F_t atom) and h~_t (per scenario), each of
/// dimension n_0 + ... + n_t, and the mirrored dual tables g_t, g~_t.
struct RecursionTable {
  std::vector<std::vector<PolyFun>> h;        // [t][atom]
  std::vector<std::vector<PolyFun>> h_tilde;  // [t][scenario]
  double value = 0.0;                         // E inf h_0 over the F_0 atoms

  std::vector<std::vector<PolyFun>> g;        // [t][atom]
  std::vector<std::vector<PolyFun>> g_tilde;  // [t][scenario]
  double dual_value = 0.0;                    // E g_0(0)

  bool hasPrimal() const { return !h.empty(); }
  bool hasDual() const { return !g.empty(); }
};

struct LinealityReport {
  bool linear = false;
  bool proper = true;         // false when some integrand is improper
  int rows = 0;               // inequality rows of the lifted recession cone
  int strict_rows = 0;        // rows that are not implicit equalities
  std::vector<double> row_slacks;  // 1 on strict rows, 0 on implicit equalities
  Process witness;            // relative-interior direction of the cone
  std::string detail;
};

/// Is {x adapted : h_inf(x(omega), omega) <= 0 for all omega} a linear
/// space? One LP locates a relative-interior point w of the cone (lifted
/// with the auxiliary variables); the cone is linear iff -w also lies in it.
LinealityReport linealityCheck(const StochasticProgram& program, const lp::LpTolerances& tol = {});

/// h~_T = h, h_t = E_t h~_t, h~_{t-1} = inf over x_t of h_t. Throws
/// ImproperRecursion(stage t) when a stored function is improper.
RecursionTable primalRecursion(const StochasticProgram& program, const lp::LpTolerances& tol = {});

/// g~_T = h*, g_t = (E_t g~_t*)*, g~_{t-1}(v) = g_t(v, 0). Throws
/// ImproperRecursion(stage t). Fills the dual half of `table`.
void dualRecursion(const StochasticProgram& program, RecursionTable& table,
                   const lp::LpTolerances& tol = {});
RecursionTable dualRecursion(const StochasticProgram& program, const lp::LpTolerances& tol = {});

struct PrimalDpReport {
  bool adapted = false;
  double phi0 = 0.0;                        // from solvePrimal
  double recursion_value = 0.0;             // from the table
  std::vector<double> stage_values;         // E h_t(x^t)
  std::vector<double> margins;              // stage_values - phi0
  std::vector<std::vector<double>> argmin;  // [t][omega] h_t(x^t) - h~_{t-1}(x^{t-1})
  bool inequalities_hold = false;           // margins >= -tol
  bool optimal = false;                     // all margins within tol
};

PrimalDpReport verifyPrimalDP(const StochasticProgram& program, const RecursionTable& table,
                              const Process& x, double tol = 1e-7,
                              const lp::LpTolerances& lp_tol = {});

struct DualDpReport {
  bool adapted = false;
  bool in_annihilator = false;
  bool premise = false;                        // E h(x) < inf and E h*(v) < inf
  double phi0 = 0.0;
  double recursion_value = 0.0;
  std::vector<double> stage_values;            // E g_t(E_t v^t)
  std::vector<double> margins;                 // stage_values + phi0
  std::vector<double> fenchel_sums;            // E g_t*(x^t) + E g_t(E_t v^t)
  std::vector<std::vector<double>> residuals;  // [t][omega] g_t* + g_t - x^t . E_t v^t
  bool inequalities_hold = false;
  bool optimal = false;
};

DualDpReport verifyDualDP(const StochasticProgram& program, const RecursionTable& table,
                          const Process& x, const Process& v, double tol = 1e-7,
                          const lp::LpTolerances& lp_tol = {});

/// (E_t v_0, ..., E_t v_{t-1}, 0) for scenario omega.
VectorXd conditionedPrefix(const FilteredSpace& space, const Process& v, std::size_t t,
                           std::size_t scenario);

}  // namespace infoprice

#pragma once

#include <map>
#include <string>
#include <vector>

#include "hpst/chain_model.hpp"
#include "hpst/hpst_search.hpp"

namespace hpst {

/// Closed search interval for one parameter; lo > 0.
struct ParameterBounds {
  double lo = 0.0;
  double hi = 1.0;
};

/// Coupling design problem: find values for the template's symbolic couplings
/// such that every register pair reaches p0 while the register time is minimal.
struct OptimizationProblem {
  ChainSpec chain_template;
  double p0 = 0.9;
  ScanGrid grid;
  std::map<std::string, ParameterBounds> bounds;  // one entry per symbolic name
  double grid_resolution = 0.005;
  double refinement_tolerance = 1e-4;  // simplex diameter at which refinement stops
  int max_refinement_evaluations = 400;
};

/// Defaults: bounds (0, 1] realized as [resolution, 1]; resolution 0.005 for a
/// single parameter and 0.02 for two or more.
[[nodiscard]] OptimizationProblem make_problem(const ChainSpec& chain_template, double p0,
                                               const ScanGrid& grid);

struct ObjectiveValue {
  bool feasible = false;
  double worst_p = 0.0;
  double register_time = 0.0;
};

struct TracePoint {
  Bindings bindings;
  ObjectiveValue value;
  double score = 0.0;
  std::string stage;  // "grid" or "simplex"
};

struct OptimizationResult {
  Bindings best_bindings;
  ObjectiveValue best_value;
  HpstTable table;
  bool feasible = false;
  std::vector<TracePoint> trace;
};

/// Builds chain -> block -> spectrum -> table for `bindings`. Throws
/// DomainError if a binding is missing, unknown, or outside its bounds.
[[nodiscard]] ObjectiveValue objective(const OptimizationProblem& problem, const Bindings& bindings);

/// Lexicographic order: feasible beats infeasible; among feasible the smaller
/// register time wins, among infeasible the larger worst_p; remaining ties go
/// to the smaller register time and then the lexicographically smaller
/// bindings.
[[nodiscard]] bool better(const ObjectiveValue& a, const Bindings& a_bindings, const ObjectiveValue& b,
                          const Bindings& b_bindings);

/// Scalar encoding used by the simplex stage: the register time when feasible,
/// otherwise t_max + (p0 - worst_p) * 1e6.
[[nodiscard]] double penalty_score(const ObjectiveValue& value, double p0, double t_max) noexcept;

/// Coarse grid scan over the bounds followed by Nelder-Mead refinement of the
/// penalty score from the best grid point. Deterministic.
[[nodiscard]] OptimizationResult optimize(const OptimizationProblem& problem);

}  // namespace hpst

#include "hpst/coupling_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "hpst/dynamics.hpp"
#include "hpst/errors.hpp"
#include "hpst/pipeline.hpp"
#include "parallel.hpp"

namespace hpst {

namespace {

constexpr double kInfeasiblePenalty = 1e6;
constexpr std::size_t kMaxParameters = 4;

void check_bindings(const OptimizationProblem& problem, const Bindings& bindings) {
  for (const auto& name : problem.chain_template.symbolic_names()) {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw DomainError("objective: missing binding for '" + name + "'");
    auto bt = problem.bounds.find(name);
    if (bt == problem.bounds.end()) throw DomainError("objective: no bounds for '" + name + "'");
    if (!(it->second >= bt->second.lo && it->second <= bt->second.hi))
      throw DomainError("objective: '" + name + "' = " + std::to_string(it->second) + " outside bounds");
  }
  for (const auto& [name, value] : bindings)
    if (!problem.bounds.contains(name)) throw DomainError("objective: unknown parameter '" + name + "'");
}

// Serial table construction; the grid scan parallelizes one level up.
HpstTable evaluate_table(const OptimizationProblem& problem, const Bindings& bindings) {
  check_bindings(problem, bindings);
  const ChainAnalysis analysis = analyze_chain(problem.chain_template, bindings);
  const auto& reg = problem.chain_template.register_nodes;
  std::vector<TransferRecord> records;
  for (std::size_t i = 0; i < reg.size(); ++i)
    for (std::size_t j = i + 1; j < reg.size(); ++j)
      records.push_back(find_peak(analysis.spectrum, reg[i], reg[j], problem.p0, problem.grid));
  return assemble_table(std::move(records), problem.p0);
}

ObjectiveValue value_of(const HpstTable& table) { return {table.all_pass, table.worst_p(), table.register_time}; }

void validate(const OptimizationProblem& problem) {
  const auto names = problem.chain_template.symbolic_names();
  if (names.empty()) throw DomainError("optimization template has no symbolic couplings");
  if (names.size() > kMaxParameters) throw DomainError("at most four symbolic parameters are supported");
  if (problem.chain_template.register_nodes.size() < 2) throw DomainError("register needs at least two nodes");
  if (!(problem.p0 > 0.0 && problem.p0 < 1.0)) throw DomainError("threshold p0 must lie in (0, 1)");
  if (!(problem.grid_resolution > 0.0)) throw DomainError("grid resolution must be positive");
  validate(problem.grid);
  for (const auto& name : names) {
    auto it = problem.bounds.find(name);
    if (it == problem.bounds.end()) throw DomainError("no bounds for parameter '" + name + "'");
    if (!(it->second.lo > 0.0) || !(it->second.hi >= it->second.lo))
      throw DomainError("bounds for '" + name + "' must satisfy 0 < lo <= hi");
  }
}

std::vector<double> axis_points(const ParameterBounds& b, double resolution) {
  std::vector<double> out;
  const auto steps = static_cast<std::size_t>(std::floor((b.hi - b.lo) / resolution + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) {
    // Round away representation noise so grid bindings print as typed.
    const double v = std::round((b.lo + static_cast<double>(k) * resolution) * 1e12) / 1e12;
    out.push_back(std::min(v, b.hi));
  }
  return out;
}

class Evaluator {
 public:
  explicit Evaluator(const OptimizationProblem& problem)
      : problem_(problem), names_(problem.chain_template.symbolic_names()) {}

  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

  Bindings to_bindings(const std::vector<double>& x) const {
    Bindings b;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& bounds = problem_.bounds.at(names_[i]);
      b[names_[i]] = std::clamp(x[i], bounds.lo, bounds.hi);
    }
    return b;
  }

  double score(const ObjectiveValue& v) const { return penalty_score(v, problem_.p0, problem_.grid.t_max); }

  void record(const Bindings& b, const ObjectiveValue& v, const char* stage) {
    cache_.emplace(b, v);
    trace_.push_back({b, v, score(v), stage});
  }

  ObjectiveValue evaluate(const Bindings& b, const char* stage) {
    if (auto it = cache_.find(b); it != cache_.end()) return it->second;
    const ObjectiveValue v = value_of(evaluate_table(problem_, b));
    record(b, v, stage);
    return v;
  }

  std::vector<TracePoint>& trace() { return trace_; }

 private:
  const OptimizationProblem& problem_;
  std::vector<std::string> names_;
  std::map<Bindings, ObjectiveValue> cache_;
  std::vector<TracePoint> trace_;
};

std::vector<Bindings> grid_bindings(const OptimizationProblem& problem, const std::vector<std::string>& names) {
  std::vector<std::vector<double>> axes;
  for (const auto& name : names) axes.push_back(axis_points(problem.bounds.at(name), problem.grid_resolution));

  std::vector<Bindings> out{Bindings{}};
  for (std::size_t d = 0; d < names.size(); ++d) {
    std::vector<Bindings> next;
    next.reserve(out.size() * axes[d].size());
    for (const auto& partial : out)
      for (double v : axes[d]) {
        Bindings b = partial;
        b[names[d]] = v;
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  return out;
}

// Nelder-Mead on the penalty score, coordinates clamped into the bounds.
void refine(Evaluator& eval, const OptimizationProblem& problem, const Bindings& start) {
  const auto& names = eval.names();
  const std::size_t dim = names.size();

  struct Vertex {
    std::vector<double> x;
    double f;
  };
  auto point_of = [&](const std::vector<double>& x) {
    const Bindings b = eval.to_bindings(x);
    std::vector<double> clamped(dim);
    for (std::size_t i = 0; i < dim; ++i) clamped[i] = b.at(names[i]);
    return Vertex{clamped, eval.score(eval.evaluate(b, "simplex"))};
  };

  std::vector<double> x0(dim);
  for (std::size_t i = 0; i < dim; ++i) x0[i] = start.at(names[i]);

  std::vector<Vertex> simplex;
  simplex.push_back(point_of(x0));
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> xi = x0;
    const auto& b = problem.bounds.at(names[i]);
    const double step = problem.grid_resolution;
    xi[i] = (xi[i] + step <= b.hi) ? xi[i] + step : xi[i] - step;
    simplex.push_back(point_of(xi));
  }

  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t a = 1; a < simplex.size(); ++a)
      for (std::size_t i = 0; i < dim; ++i) d = std::max(d, std::abs(simplex[a].x[i] - simplex[0].x[i]));
    return d;
  };

  const std::size_t budget = eval.trace().size() + static_cast<std::size_t>(problem.max_refinement_evaluations);
  while (eval.trace().size() < budget) {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (diameter() < problem.refinement_tolerance) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[a].x[i] / static_cast<double>(dim);
    auto along = [&](double coeff) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i) x[i] = centroid[i] + coeff * (simplex.back().x[i] - centroid[i]);
      return point_of(x);
    };

    Vertex reflected = along(-1.0);
    if (reflected.f < simplex.front().f) {
      Vertex expanded = along(-2.0);
      simplex.back() = expanded.f < reflected.f ? expanded : reflected;
    } else if (reflected.f < simplex[dim - 1].f) {
      simplex.back() = reflected;
    } else {
      Vertex contracted = reflected.f < simplex.back().f ? along(-0.5) : along(0.5);
      if (contracted.f < std::min(reflected.f, simplex.back().f)) {
        simplex.back() = contracted;
      } else {
        for (std::size_t a = 1; a < simplex.size(); ++a) {
          std::vector<double> x(dim);
          for (std::size_t i = 0; i < dim; ++i)
            x[i] = simplex.front().x[i] + 0.5 * (simplex[a].x[i] - simplex.front().x[i]);
          simplex[a] = point_of(x);
        }
      }
    }
  }
}

}  // namespace

OptimizationProblem make_problem(const ChainSpec& chain_template, double p0, const ScanGrid& grid) {
  OptimizationProblem problem;
  problem.chain_template = chain_template;
  problem.p0 = p0;
  problem.grid = grid;
  const auto names = chain_template.symbolic_names();
  problem.grid_resolution = names.size() <= 1 ? 0.005 : 0.02;
  for (const auto& name : names) problem.bounds[name] = {problem.grid_resolution, 1.0};
  return problem;
}

ObjectiveValue objective(const OptimizationProblem& problem, const Bindings& bindings) {
  return value_of(evaluate_table(problem, bindings));
}

bool better(const ObjectiveValue& a, const Bindings& a_bindings, const ObjectiveValue& b,
            const Bindings& b_bindings) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.feasible) {
    if (a.register_time != b.register_time) return a.register_time < b.register_time;
  } else {
    if (a.worst_p != b.worst_p) return a.worst_p > b.worst_p;
    if (a.register_time != b.register_time) return a.register_time < b.register_time;
  }
  return a_bindings < b_bindings;
}

double penalty_score(const ObjectiveValue& value, double p0, double t_max) noexcept {
  if (value.feasible) return value.register_time;
  return t_max + (p0 - value.worst_p) * kInfeasiblePenalty;
}

OptimizationResult optimize(const OptimizationProblem& problem) {
  validate(problem);
  Evaluator eval(problem);

  const std::vector<Bindings> grid = grid_bindings(problem, eval.names());
  std::vector<ObjectiveValue> values(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t i) { values[i] = objective(problem, grid[i]); });
  for (std::size_t i = 0; i < grid.size(); ++i) eval.record(grid[i], values[i], "grid");

  auto best_of_trace = [&] {
    const auto& trace = eval.trace();
    std::size_t best = 0;
    for (std::size_t i = 1; i < trace.size(); ++i)
      if (better(trace[i].value, trace[i].bindings, trace[best].value, trace[best].bindings)) best = i;
    return trace[best];
  };

  if (grid.size() > 1) refine(eval, problem, best_of_trace().bindings);

  const TracePoint best = best_of_trace();
  OptimizationResult result;
  result.best_bindings = best.bindings;
  result.best_value = best.value;
  result.feasible = best.value.feasible;
  result.table = evaluate_table(problem, best.bindings);
  result.trace = std::move(eval.trace());
  return result;
}

}  // namespace hpst

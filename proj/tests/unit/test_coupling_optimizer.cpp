#include <doctest.h>

#include "hpst/coupling_optimizer.hpp"
#include "hpst/errors.hpp"
#include "hpst/presets.hpp"

using namespace hpst;

namespace {

OptimizationProblem problem_for(const std::string& name) {
  const Preset& p = find_preset(name);
  return make_problem(p.spec, p.p0, {p.t_max, p.dt});
}

}  // namespace

TEST_CASE("problem defaults") {
  const OptimizationProblem one = problem_for("L11_2_0_2");
  CHECK(one.grid_resolution == 0.005);
  REQUIRE(one.bounds.size() == 1);
  CHECK(one.bounds.at("delta").lo == 0.005);
  CHECK(one.bounds.at("delta").hi == 1.0);
  CHECK(problem_for("Lhat11_3_0_3").grid_resolution == 0.02);

  ChainSpec numeric = find_preset("L11_2_0_2").spec;
  numeric.nn_couplings = {1.0, 0.2, 1.0};
  numeric.parameters.clear();
  CHECK_THROWS_AS((void)optimize(make_problem(numeric, 0.9, {})), DomainError);
}

TEST_CASE("objective at the reference optimum") {
  const OptimizationProblem pb = problem_for("L11_2_0_2");
  const ObjectiveValue v = objective(pb, {{"delta", 0.196}});
  CHECK(v.feasible);
  CHECK(std::abs(v.worst_p - 0.904) <= 0.005);
  CHECK(std::abs(v.register_time - 58.585) <= 0.05);
  CHECK(penalty_score(v, pb.p0, pb.grid.t_max) == v.register_time);
}

TEST_CASE("uniform four-chain baseline") {
  // Regression value recorded from this implementation: without a weak bond
  // the far pairs never reach 0.9 inside the window.
  const OptimizationProblem pb = problem_for("L11_2_0_2");
  const ObjectiveValue v = objective(pb, {{"delta", 1.0}});
  CHECK_FALSE(v.feasible);
  CHECK(v.worst_p < 0.9);
  CHECK(penalty_score(v, pb.p0, pb.grid.t_max) == doctest::Approx(pb.grid.t_max + (0.9 - v.worst_p) * 1e6));
}

TEST_CASE("binding validation") {
  const OptimizationProblem pb = problem_for("L11_2_0_2");
  CHECK_THROWS_AS((void)objective(pb, {{"delta", 1.5}}), DomainError);
  CHECK_THROWS_AS((void)objective(pb, {{"delta", 0.0}}), DomainError);
  CHECK_THROWS_AS((void)objective(pb, {}), DomainError);
  CHECK_THROWS_AS((void)objective(pb, {{"delta", 0.2}, {"bogus", 0.5}}), DomainError);
}

TEST_CASE("lexicographic order") {
  const Bindings x{{"d", 0.1}};
  const Bindings y{{"d", 0.2}};
  const ObjectiveValue feas_slow{true, 0.91, 80.0};
  const ObjectiveValue feas_fast{true, 0.95, 60.0};
  const ObjectiveValue infeas_hi{false, 0.89, 10.0};
  const ObjectiveValue infeas_lo{false, 0.5, 5.0};
  CHECK(better(feas_slow, x, infeas_hi, x));
  CHECK_FALSE(better(infeas_hi, x, feas_slow, x));
  CHECK(better(feas_fast, x, feas_slow, x));
  CHECK(better(infeas_hi, x, infeas_lo, x));
  CHECK(better(feas_fast, x, feas_fast, y));
  CHECK_FALSE(better(feas_fast, y, feas_fast, x));
  CHECK_FALSE(better(feas_fast, x, feas_fast, x));
  const ObjectiveValue tie_a{false, 0.8, 10.0};
  const ObjectiveValue tie_b{false, 0.8, 20.0};
  CHECK(better(tie_a, y, tie_b, x));
  CHECK(penalty_score(infeas_hi, 0.9, 100.0) > penalty_score(feas_slow, 0.9, 100.0));
  CHECK(penalty_score(infeas_lo, 0.9, 100.0) > penalty_score(infeas_hi, 0.9, 100.0));
}

TEST_CASE("reference values are feasible for every preset") {
  for (const Preset& p : presets()) {
    CAPTURE(p.name);
    if (p.t_max > 1000) continue;  // long-window presets covered by the acceptance suite
    const OptimizationProblem pb = make_problem(p.spec, p.p0, {p.t_max, p.dt});
    CHECK(objective(pb, p.spec.parameters).feasible);
  }
}

TEST_CASE("one-parameter optimum, dominance and reproducibility") {
  const OptimizationProblem pb = problem_for("L11_2_0_2");
  const OptimizationResult r = optimize(pb);
  REQUIRE(r.feasible);
  const double d = r.best_bindings.at("delta");
  const ObjectiveValue reference = objective(pb, {{"delta", 0.196}});
  CHECK((std::abs(d - 0.196) <= 0.02 || better(r.best_value, r.best_bindings, reference, {{"delta", 0.196}})));
  for (const TracePoint& tp : r.trace) CHECK_FALSE(better(tp.value, tp.bindings, r.best_value, r.best_bindings));
  CHECK(r.table.register_time == r.best_value.register_time);
  CHECK(objective(pb, r.best_bindings).register_time == r.best_value.register_time);

  const OptimizationResult again = optimize(pb);
  CHECK(again.best_bindings == r.best_bindings);
  CHECK(again.table == r.table);
  CHECK(again.trace.size() == r.trace.size());
}

TEST_CASE("single-point bounds") {
  OptimizationProblem pb = problem_for("L11_2_0_2");
  pb.bounds["delta"] = {0.3, 0.3};
  const OptimizationResult r = optimize(pb);
  CHECK(r.best_bindings.at("delta") == 0.3);
}

TEST_CASE("infeasible problems report the best infeasible point") {
  OptimizationProblem pb = problem_for("L11_2_0_2");
  pb.grid.t_max = 20.0;
  pb.grid_resolution = 0.05;
  pb.bounds["delta"] = {0.05, 1.0};
  const OptimizationResult r = optimize(pb);
  CHECK_FALSE(r.feasible);
  CHECK_FALSE(r.best_value.feasible);
  for (const TracePoint& tp : r.trace) CHECK(tp.value.worst_p <= r.best_value.worst_p);
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "hpst/dynamics.hpp"
#include "hpst/errors.hpp"
#include "hpst/hpst_search.hpp"
#include "hpst/phase_compensation.hpp"
#include "hpst/pipeline.hpp"
#include "hpst/presets.hpp"

using namespace hpst;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

const HpstTable& table1() {
  static const HpstTable t = [] {
    const Preset& p = find_preset("L11_2_0_2");
    const ChainAnalysis a = analyze_chain(p.spec);
    return build_hpst_table(a.spectrum, a.spec.register_nodes, p.p0, {p.t_max, p.dt});
  }();
  return t;
}

HpstTable single_pair(double t, double phi) {
  return assemble_table({TransferRecord{1, 2, 0.95, t, phi}}, 0.9);
}

}  // namespace

TEST_CASE("constraints from the four-chain table") {
  const auto c = collect_constraints(table1());
  REQUIRE(c.size() == 4);
  const double times[] = {3.040, 52.548, 55.533, 58.585};
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(c[k].t_bar - times[k]) <= 0.05);
  CHECK(std::abs(c[2].phi_bar + 3.010) <= 0.02);
  CHECK(collect_constraints(single_pair(2.0, 1.0)).size() == 1);
}

TEST_CASE("conflicting phases at a shared time") {
  const HpstTable t = assemble_table({TransferRecord{1, 2, 0.95, 5.0, 1.0}, TransferRecord{1, 3, 0.95, 5.0, 1.5}}, 0.9);
  CHECK_THROWS_AS((void)collect_constraints(t), PhaseFitError);
  const HpstTable wrapped =
      assemble_table({TransferRecord{1, 2, 0.95, 5.0, std::numbers::pi}, TransferRecord{1, 3, 0.95, 5.0, -std::numbers::pi + 1e-9}}, 0.9);
  CHECK(collect_constraints(wrapped).size() == 1);
}

TEST_CASE("single constraint") {
  const auto pos = collect_constraints(single_pair(4.0, 1.2));
  const PhasePolynomial lin = fit_phase_polynomial(pos, 4.0);
  REQUIRE(lin.coefficients.size() == 1);
  CHECK(lin.branches == std::vector<int>{0});
  CHECK(lin.coefficients[0] == doctest::Approx(1.2 / 4.0));
  CHECK(omega_at(lin, 0.0) == omega_at(lin, 4.0));

  const auto neg = collect_constraints(single_pair(4.0, -1.2));
  const PhasePolynomial lifted = fit_phase_polynomial(neg, 4.0);
  CHECK(lifted.branches == std::vector<int>{1});
  CHECK(lifted.coefficients[0] == doctest::Approx((-1.2 + kTwoPi) / 4.0));
  CHECK(lifted.coefficients[0] > 0.0);

  PhaseFitOptions none;
  none.branch_search_limit = 0;
  CHECK_THROWS_AS((void)fit_phase_polynomial(neg, 4.0, none), PhaseFitError);
}

TEST_CASE("reference branches reproduce the reference quartic") {
  const auto c = collect_constraints(table1());
  const std::vector<int> branches{0, 3, 4, 4};
  const PhasePolynomial p = fit_with_branches(c, branches, table1().register_time);
  const double expected[] = {4.1241e-1, -6.9297e-3, 2.3114e-4, -1.9971e-6};
  REQUIRE(p.coefficients.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(p.coefficients[k] / expected[k] - 1.0) <= 1e-2);
  CHECK(check_positivity(p).positive);
  CHECK(omega_at(p, 0.0) == doctest::Approx(p.coefficients[0]));
}

TEST_CASE("reference quartic evaluated at the first arrival time") {
  PhasePolynomial ref;
  ref.coefficients = {4.1241e-1, -6.9297e-3, 2.3114e-4, -1.9971e-6};
  ref.t_end = 58.6;
  CHECK(std::abs(wrap_phase(ref.integral_at(3.040)) - 1.196) <= 2e-3);
  CHECK(ref.integral_at(0.0) == 0.0);
  CHECK(check_positivity(ref).positive);
  const CompensationReport rep = verify_compensation(ref, table1());
  CHECK(rep.max_abs_gamma <= 5e-2);
}

TEST_CASE("enumerated fit: interpolation, positivity, minimality") {
  const auto c = collect_constraints(table1());
  const double t_end = table1().register_time;
  const PhasePolynomial p = fit_phase_polynomial(c, t_end);
  REQUIRE(p.branches.size() == c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    CHECK(std::abs(p.integral_at(c[k].t_bar) - (c[k].phi_bar + kTwoPi * p.branches[k])) <= 1e-9);
  }
  CHECK(p.integral_at(0.0) == 0.0);
  const PositivityCheck pc = check_positivity(p);
  CHECK(pc.positive);
  CHECK(pc.min_on_grid > 0.0);
  CHECK(pc.guaranteed_min > 0.0);
  for (int k = 0; k <= 100000; ++k) CHECK(omega_at(p, t_end * k / 100000) > 0.0);

  // no vector with a smaller branch sum gives a positive field
  const int sum = std::accumulate(p.branches.begin(), p.branches.end(), 0);
  for (int a = 0; a <= sum; ++a)
    for (int b = 0; a + b <= sum; ++b)
      for (int d = 0; a + b + d <= sum; ++d)
        for (int e = 0; a + b + d + e < sum; ++e) {
          const std::vector<int> m{a, b, d, e};
          CHECK_FALSE(check_positivity(fit_with_branches(c, m, t_end)).positive);
        }

  const CompensationReport rep = verify_compensation(p, table1());
  CHECK(rep.fidelity_maximal);
  CHECK(rep.max_abs_gamma <= 1e-6);
  for (const PairCompensation& pc2 : rep.pairs) CHECK(pc2.fidelity == doctest::Approx(pc2.ideal_fidelity).epsilon(1e-9));
}

TEST_CASE("zero field with zero phases") {
  const HpstTable t = single_pair(3.0, 0.0);
  PhasePolynomial zero;
  zero.coefficients = {0.0};
  zero.t_end = 3.0;
  const CompensationReport rep = verify_compensation(zero, t);
  CHECK(rep.max_abs_gamma == 0.0);
  CHECK_FALSE(check_positivity(zero).positive);
}

TEST_CASE("positivity catches a dip between samples") {
  // omega(t) = (t - 0.5)^2 - 1e-10 dips below zero in a window far narrower than the grid
  PhasePolynomial p;
  p.t_end = 1.0;
  p.coefficients = {0.25 - 1e-10, -0.5, 1.0 / 3.0};
  const PositivityCheck c = check_positivity(p, 100);
  CHECK_FALSE(c.positive);
  p.coefficients = {0.25 + 1e-6, -0.5, 1.0 / 3.0};
  CHECK(check_positivity(p, 100).positive);
}

TEST_CASE("domain and input errors") {
  const auto c = collect_constraints(single_pair(4.0, 1.2));
  const PhasePolynomial p = fit_phase_polynomial(c, 4.0);
  CHECK_THROWS_AS((void)omega_at(p, -0.1), DomainError);
  CHECK_THROWS_AS((void)omega_at(p, 4.1), DomainError);
  const std::vector<int> wrong{0, 1};
  CHECK_THROWS_AS((void)fit_with_branches(c, wrong, 4.0), PhaseFitError);
  CHECK_THROWS_AS((void)collect_constraints(HpstTable{}), PhaseFitError);
}

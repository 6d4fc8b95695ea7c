#include <doctest.h>

#include <random>
#include <sstream>

#include "generators.hpp"
#include "hpst/chain_model.hpp"
#include "hpst/errors.hpp"
#include "hpst/golden.hpp"
#include "hpst/hpst_search.hpp"
#include "hpst/phase_compensation.hpp"
#include "hpst/pipeline.hpp"
#include "hpst/presets.hpp"
#include "hpst/serialization.hpp"

using namespace hpst;

TEST_CASE("property: table round trip is the identity") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int draw = 0; draw < 50; ++draw) {
    std::vector<TransferRecord> recs;
    const int n = 2 + draw % 5;
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) recs.push_back({a, b, u(rng), 1000 * u(rng), 6 * u(rng) - 3});
    const HpstTable t = assemble_table(recs, 0.05 + 0.9 * u(rng));
    CHECK(hpst_table_from_json(to_json(t)) == t);
  }
}

TEST_CASE("table decoding rejects inconsistent documents") {
  const HpstTable t = assemble_table({TransferRecord{1, 2, 0.95, 5.0, 1.0}}, 0.9);
  std::string doc = to_json(t);
  CHECK_THROWS_AS((void)hpst_table_from_json("{"), FormatError);
  CHECK_THROWS_AS((void)hpst_table_from_json("[]"), FormatError);
  const auto pos = doc.find("\"all_pass\": true");
  REQUIRE(pos != std::string::npos);
  doc.replace(pos, 16, "\"all_pass\": false");
  CHECK_THROWS_AS((void)hpst_table_from_json(doc), FormatError);
}

TEST_CASE("chain spec round trip") {
  for (const Preset& p : presets()) {
    const ChainSpec back = chain_spec_from_json(to_json(p.spec));
    CHECK(back.n_nodes == p.spec.n_nodes);
    CHECK(back.nn_couplings == p.spec.nn_couplings);
    CHECK(back.register_nodes == p.spec.register_nodes);
    CHECK(back.parameters == p.spec.parameters);
    CHECK(back.symmetric == p.spec.symmetric);
  }
  CHECK_THROWS_AS((void)chain_spec_from_json(R"({"n_nodes": 3})"), FormatError);
  CHECK_THROWS_AS((void)chain_spec_from_json(R"({"n_nodes": 3, "nn_couplings": [1, true], "register_nodes": [1]})"),
                  FormatError);
}

TEST_CASE("polynomial round trip") {
  PhasePolynomial p;
  p.coefficients = {0.4, -0.01, 2e-4};
  p.t_end = 12.5;
  p.branches = {0, 2, 3};
  const PhasePolynomial q = phase_polynomial_from_json(to_json(p));
  CHECK(q.coefficients == p.coefficients);
  CHECK(q.t_end == p.t_end);
  CHECK(q.branches == p.branches);
}

TEST_CASE("csv layouts") {
  const ChainAnalysis a = analyze_chain(find_preset("L11_2_0_2").spec);
  const std::vector<int> targets{2, 4};
  const std::string csv = probability_csv(a.spectrum, 1, targets, 1.0, 0.5);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,P_1_2,P_1_4");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(csv.find('\r') == std::string::npos);

  const std::string spec_csv = spectrum_csv(a.spectrum);
  CHECK(spec_csv.rfind("j,lambda,u_1,u_2,u_3,u_4\n", 0) == 0);
  const std::string m = matrix_csv(a.block.d_matrix);
  CHECK(std::count(m.begin(), m.end(), '\n') >= 4);
}

TEST_CASE("text table cell layout") {
  const ChainAnalysis a = analyze_chain(find_preset("L11_2_0_2").spec);
  const HpstTable t = build_hpst_table(a.spectrum, a.spec.register_nodes, 0.9, {});
  const std::string text = format_text_table(t, a.spec.register_nodes);
  CHECK(text.find("0.931 3.041 1.195") != std::string::npos);
  CHECK(text.find("0.912 58.585 -1.806") != std::string::npos);
}

TEST_CASE("embedded reference tables") {
  const std::size_t cells[] = {12, 12, 12, 56, 12, 56};
  for (int k = 1; k <= 6; ++k) {
    const GoldenTable& g = golden_table(k);
    CHECK(g.table == k);
    CHECK(g.cells.size() == cells[k - 1]);
    CHECK_NOTHROW((void)find_preset(g.preset));
  }
  CHECK_THROWS_AS((void)golden_table(7), DomainError);
  const GoldenTable& g6 = golden_table(6);
  bool found = false;
  for (const GoldenCell& c : g6.cells)
    if (c.source == 1 && c.target == 2) {
      found = true;
      CHECK(c.p_bar == 0.893);
      CHECK(c.t_bar == 2.984);
      CHECK(c.phi_bar == 1.139);
    }
  CHECK(found);
}

TEST_CASE("golden diff against a perturbed table") {
  const Reproduction r = reproduce_table(1);
  CHECK(r.diff.all_within);
  CHECK(r.diff.failures() == 0);
  HpstTable off = r.table;
  off.records[0].t_bar += 0.2;
  const GoldenDiff d = diff_against_golden(off, r.golden);
  CHECK_FALSE(d.all_within);
  CHECK(d.failures() == 2);  // the cell and its transpose
  CHECK(d.max_dt >= 0.2 - 0.05);
}

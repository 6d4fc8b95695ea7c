#include "hpst/golden.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "format_util.hpp"
#include "hpst/dynamics.hpp"
#include "hpst/errors.hpp"
#include "hpst/pipeline.hpp"
#include "hpst/presets.hpp"

namespace hpst {

namespace detail {
extern const std::array<std::string_view, 6> kGoldenTableJson;
}

using nlohmann::json;

GoldenTable golden_table_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    GoldenTable g;
    g.table = j.at("table").get<int>();
    g.preset = j.at("preset").get<std::string>();
    g.p0 = j.at("p0").get<double>();
    g.t_max = j.at("t_max").get<double>();
    g.dt = j.at("dt").get<double>();
    g.register_nodes = j.at("register_nodes").get<std::vector<int>>();
    const auto& tol = j.at("tolerances");
    g.tolerances = {tol.at("p").get<double>(), tol.at("t").get<double>(), tol.at("phi").get<double>()};
    for (const auto& c : j.at("cells"))
      g.cells.push_back({c.at("source").get<int>(), c.at("target").get<int>(), c.at("p_bar").get<double>(),
                         c.at("t_bar").get<double>(), c.at("phi_bar").get<double>()});
    return g;
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid golden table JSON: ") + e.what());
  }
}

const GoldenTable& golden_table(int k) {
  if (k < 1 || k > 6) throw DomainError("reference tables are numbered 1..6");
  static std::array<GoldenTable, 6> tables;
  static std::once_flag once;
  std::call_once(once, [] {
    for (std::size_t i = 0; i < tables.size(); ++i) tables[i] = golden_table_from_json(detail::kGoldenTableJson[i]);
  });
  return tables[static_cast<std::size_t>(k - 1)];
}

std::size_t GoldenDiff::failures() const noexcept {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.within ? 0 : 1;
  return n;
}

GoldenDiff diff_against_golden(const HpstTable& table, const GoldenTable& golden) {
  GoldenDiff diff;
  diff.table = golden.table;
  diff.all_within = true;
  for (const auto& cell : golden.cells) {
    CellDiff d;
    d.expected = cell;
    const TransferRecord* r = table.find(cell.source, cell.target);
    if (r == nullptr) {
      d.within = false;
      diff.all_within = false;
      diff.cells.push_back(d);
      continue;
    }
    d.actual = *r;
    d.dp = std::abs(r->p_bar - cell.p_bar);
    d.dt = std::abs(r->t_bar - cell.t_bar);
    d.dphi = std::abs(wrap_phase(r->phi_bar - cell.phi_bar));
    d.within = d.dp <= golden.tolerances.p && d.dt <= golden.tolerances.t && d.dphi <= golden.tolerances.phi;
    diff.max_dp = std::max(diff.max_dp, d.dp);
    diff.max_dt = std::max(diff.max_dt, d.dt);
    diff.max_dphi = std::max(diff.max_dphi, d.dphi);
    diff.all_within = diff.all_within && d.within;
    diff.cells.push_back(d);
  }
  return diff;
}

Reproduction reproduce_table(int k) {
  Reproduction out;
  out.golden = golden_table(k);
  const Preset& preset = find_preset(out.golden.preset);
  const ChainAnalysis analysis = analyze_chain(preset.spec);
  out.table = build_hpst_table(analysis.spectrum, out.golden.register_nodes, out.golden.p0,
                               ScanGrid{out.golden.t_max, out.golden.dt});
  out.diff = diff_against_golden(out.table, out.golden);
  return out;
}

std::string to_json(const GoldenDiff& diff) {
  json cells = json::array();
  for (const auto& c : diff.cells)
    cells.push_back({{"source", c.expected.source},
                     {"target", c.expected.target},
                     {"expected", {c.expected.p_bar, c.expected.t_bar, c.expected.phi_bar}},
                     {"actual", {c.actual.p_bar, c.actual.t_bar, c.actual.phi_bar}},
                     {"delta", {c.dp, c.dt, c.dphi}},
                     {"within", c.within}});
  json j = {{"table", diff.table},
            {"all_within", diff.all_within},
            {"failures", diff.failures()},
            {"max_delta", {diff.max_dp, diff.max_dt, diff.max_dphi}},
            {"cells", cells}};
  return j.dump(2);
}

std::string format_diff(const GoldenDiff& diff) {
  std::ostringstream os;
  os << "table " << diff.table << ": " << diff.cells.size() - diff.failures() << "/" << diff.cells.size()
     << " cells within tolerance\n";
  for (const auto& c : diff.cells) {
    os << "  (" << c.expected.source << "," << c.expected.target << ")  expected " << detail::fixed(c.expected.p_bar, 3)
       << ' ' << detail::fixed(c.expected.t_bar, 3) << ' ' << detail::fixed(c.expected.phi_bar, 3) << "  got "
       << detail::fixed(c.actual.p_bar, 3) << ' ' << detail::fixed(c.actual.t_bar, 3) << ' '
       << detail::fixed(c.actual.phi_bar, 3) << "  delta " << detail::fixed(c.dp, 4) << ' ' << detail::fixed(c.dt, 4)
       << ' ' << detail::fixed(c.dphi, 4) << (c.within ? "" : "  MISMATCH") << '\n';
  }
  os << "  max delta: P " << detail::fixed(diff.max_dp, 4) << ", t " << detail::fixed(diff.max_dt, 4) << ", phi "
     << detail::fixed(diff.max_dphi, 4) << '\n';
  return os.str();
}

}  // namespace hpst

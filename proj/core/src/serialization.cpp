#include "hpst/serialization.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "format_util.hpp"
#include "hpst/errors.hpp"

namespace hpst {

using nlohmann::json;

namespace {

template <class Fn>
auto decode(std::string_view text, const char* what, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid ") + what + " JSON: " + e.what());
  }
}

json record_json(const TransferRecord& r) {
  return {{"source", r.source}, {"target", r.target}, {"p_bar", r.p_bar}, {"t_bar", r.t_bar}, {"phi_bar", r.phi_bar}};
}

json table_json(const HpstTable& t) {
  json records = json::array();
  for (const auto& r : t.records) records.push_back(record_json(r));
  return {{"p0", t.p0}, {"register_time", t.register_time}, {"all_pass", t.all_pass}, {"records", records}};
}

HpstTable table_from(const json& j) {
  std::vector<TransferRecord> records;
  for (const auto& r : j.at("records")) {
    records.push_back({r.at("source").get<int>(), r.at("target").get<int>(), r.at("p_bar").get<double>(),
                       r.at("t_bar").get<double>(), r.at("phi_bar").get<double>()});
  }
  HpstTable t = assemble_table(std::move(records), j.at("p0").get<double>());
  if (j.contains("register_time") && j.at("register_time").get<double>() != t.register_time)
    throw FormatError("HpstTable register_time disagrees with its records");
  if (j.contains("all_pass") && j.at("all_pass").get<bool>() != t.all_pass)
    throw FormatError("HpstTable all_pass disagrees with its records");
  return t;
}

json value_json(const ObjectiveValue& v) {
  return {{"feasible", v.feasible}, {"worst_p", v.worst_p}, {"register_time", v.register_time}};
}

}  // namespace

std::string to_json(const ChainSpec& spec) {
  json couplings = json::array();
  for (const auto& term : spec.nn_couplings) {
    if (const auto* v = std::get_if<double>(&term))
      couplings.push_back(*v);
    else
      couplings.push_back(std::get<std::string>(term));
  }
  json j = {{"n_nodes", spec.n_nodes},
            {"nn_couplings", couplings},
            {"register_nodes", spec.register_nodes},
            {"parameters", spec.parameters},
            {"symmetric", spec.symmetric}};
  return j.dump(2);
}

ChainSpec chain_spec_from_json(std::string_view text) {
  ChainSpec spec = decode(text, "ChainSpec", [](const json& j) {
    ChainSpec s;
    s.n_nodes = j.at("n_nodes").get<std::size_t>();
    for (const auto& c : j.at("nn_couplings")) {
      if (c.is_number())
        s.nn_couplings.emplace_back(c.get<double>());
      else if (c.is_string())
        s.nn_couplings.emplace_back(c.get<std::string>());
      else
        throw FormatError("nn_couplings entries must be numbers or parameter names");
    }
    s.register_nodes = j.at("register_nodes").get<std::vector<int>>();
    if (j.contains("parameters")) s.parameters = j.at("parameters").get<Bindings>();
    s.symmetric = j.value("symmetric", false);
    return s;
  });
  validate(spec);
  return spec;
}

std::string to_json(const HpstTable& table) { return table_json(table).dump(2); }

HpstTable hpst_table_from_json(std::string_view text) { return decode(text, "HpstTable", table_from); }

std::string to_json(const OptimizationResult& result, bool include_trace) {
  json j = {{"feasible", result.feasible},
            {"best_bindings", result.best_bindings},
            {"best_value", value_json(result.best_value)},
            {"table", table_json(result.table)}};
  if (include_trace) {
    json trace = json::array();
    for (const auto& p : result.trace)
      trace.push_back({{"bindings", p.bindings},
                       {"feasible", p.value.feasible},
                       {"worst_p", p.value.worst_p},
                       {"register_time", p.value.register_time},
                       {"score", p.score},
                       {"stage", p.stage}});
    j["trace"] = std::move(trace);
  }
  return j.dump(2);
}

std::string to_json(const PhasePolynomial& poly) {
  const PositivityCheck check = check_positivity(poly);
  json j = {{"coefficients", poly.coefficients},
            {"t_end", poly.t_end},
            {"branches", poly.branches},
            {"min_omega", check.min_on_grid},
            {"positive", check.positive}};
  return j.dump(2);
}

PhasePolynomial phase_polynomial_from_json(std::string_view text) {
  return decode(text, "PhasePolynomial", [](const json& j) {
    PhasePolynomial p;
    p.coefficients = j.at("coefficients").get<std::vector<double>>();
    p.t_end = j.at("t_end").get<double>();
    if (j.contains("branches")) p.branches = j.at("branches").get<std::vector<int>>();
    return p;
  });
}

std::string to_json(const CompensationReport& report) {
  json pairs = json::array();
  for (const auto& p : report.pairs)
    pairs.push_back({{"source", p.source},
                     {"target", p.target},
                     {"t_bar", p.t_bar},
                     {"big_gamma", p.big_gamma},
                     {"fidelity", p.fidelity},
                     {"ideal_fidelity", p.ideal_fidelity}});
  json j = {{"max_abs_gamma", report.max_abs_gamma}, {"fidelity_maximal", report.fidelity_maximal}, {"pairs", pairs}};
  return j.dump(2);
}

std::string probability_csv(const SpectralData& spectrum, int source, std::span<const int> targets, double t_max,
                            double dt) {
  std::vector<std::vector<ProbabilitySample>> columns;
  for (int target : targets) columns.push_back(probability_series(spectrum, source, target, t_max, dt));

  std::ostringstream os;
  os << "t";
  for (int target : targets) os << ",P_" << source << '_' << target;
  os << '\n';
  const std::size_t rows = series_length(t_max, dt);
  for (std::size_t k = 0; k < rows; ++k) {
    os << detail::num(static_cast<double>(k) * dt);
    for (const auto& col : columns) os << ',' << detail::num(col[k].p);
    os << '\n';
  }
  return os.str();
}

std::string matrix_csv(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << "c" << j + 1;
  os << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << detail::num(m(i, j));
    os << '\n';
  }
  return os.str();
}

std::string spectrum_csv(const SpectralData& spectrum) {
  const std::size_t n = spectrum.size();
  std::ostringstream os;
  os << "j,lambda";
  for (std::size_t i = 0; i < n; ++i) os << ",u_" << i + 1;
  os << '\n';
  for (std::size_t j = 0; j < n; ++j) {
    os << j + 1 << ',' << detail::num(spectrum.eigenvalues[j]);
    for (std::size_t i = 0; i < n; ++i) os << ',' << detail::num(spectrum.eigenvectors(i, j));
    os << '\n';
  }
  return os.str();
}

std::string trace_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream os;
  os << "stage";
  if (!trace.empty())
    for (const auto& [name, value] : trace.front().bindings) os << ',' << name;
  os << ",feasible,worst_p,register_time,score\n";
  for (const auto& p : trace) {
    os << p.stage;
    for (const auto& [name, value] : p.bindings) os << ',' << detail::num(value);
    os << ',' << (p.value.feasible ? 1 : 0) << ',' << detail::num(p.value.worst_p) << ','
       << detail::num(p.value.register_time) << ',' << detail::num(p.score) << '\n';
  }
  return os.str();
}

std::string omega_csv(const PhasePolynomial& poly, std::size_t samples) {
  samples = std::max<std::size_t>(samples, 2);
  std::ostringstream os;
  os << "t,omega\n";
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = poly.t_end * static_cast<double>(k) / static_cast<double>(samples - 1);
    os << detail::num(t) << ',' << detail::num(poly.derivative_at(t)) << '\n';
  }
  return os.str();
}

std::string format_text_table(const HpstTable& table, std::span<const int> register_nodes) {
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 1;
  for (int a : register_nodes) {
    auto& row = cells.emplace_back();
    for (int b : register_nodes) {
      std::string cell;
      if (a != b)
        if (const TransferRecord* r = table.find(a, b))
          cell = detail::fixed(r->p_bar, 3) + ' ' + detail::fixed(r->t_bar, 3) + ' ' + detail::fixed(r->phi_bar, 3);
      width = std::max(width, cell.size());
      row.push_back(std::move(cell));
    }
  }
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  std::size_t label = 1;
  for (int a : register_nodes) label = std::max(label, std::to_string(a).size());

  std::ostringstream os;
  os << pad("", label);
  for (int b : register_nodes) os << " | " << pad(std::to_string(b), width);
  os << '\n';
  for (std::size_t i = 0; i < register_nodes.size(); ++i) {
    os << pad(std::to_string(register_nodes[i]), label);
    for (const auto& cell : cells[i]) os << " | " << pad(cell, width);
    os << '\n';
  }
  return os.str();
}

}  // namespace hpst

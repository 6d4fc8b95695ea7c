#include "hpst/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hpst/errors.hpp"

namespace hpst {

namespace {

std::string describe(const CouplingTerm& term) {
  if (const auto* name = std::get_if<std::string>(&term)) return *name;
  std::ostringstream os;
  os << std::get<double>(term);
  return os.str();
}

}  // namespace

bool ChainSpec::is_resolved() const noexcept {
  return std::all_of(nn_couplings.begin(), nn_couplings.end(),
                     [](const CouplingTerm& t) { return std::holds_alternative<double>(t); });
}

std::vector<std::string> ChainSpec::symbolic_names() const {
  std::vector<std::string> names;
  for (const auto& term : nn_couplings)
    if (const auto* name = std::get_if<std::string>(&term))
      if (std::find(names.begin(), names.end(), *name) == names.end()) names.push_back(*name);
  return names;
}

std::vector<double> ChainSpec::numeric_couplings() const {
  std::vector<double> out;
  out.reserve(nn_couplings.size());
  for (const auto& term : nn_couplings) {
    if (const auto* name = std::get_if<std::string>(&term))
      throw ChainError("coupling '" + *name + "' is symbolic; resolve parameters first");
    out.push_back(std::get<double>(term));
  }
  return out;
}

void validate(const ChainSpec& spec) {
  if (spec.n_nodes < 2) throw ChainError("a chain needs at least two nodes");
  if (spec.nn_couplings.size() + 1 != spec.n_nodes) {
    std::ostringstream os;
    os << "expected " << spec.n_nodes - 1 << " nearest-neighbour couplings, got " << spec.nn_couplings.size();
    throw ChainError(os.str());
  }
  for (std::size_t i = 0; i < spec.nn_couplings.size(); ++i) {
    const auto& term = spec.nn_couplings[i];
    if (const auto* v = std::get_if<double>(&term)) {
      if (!(*v > 0.0) || !std::isfinite(*v)) {
        std::ostringstream os;
        os << "coupling D_" << i + 1 << " = " << *v << " must be positive";
        throw ChainError(os.str());
      }
    } else if (std::get<std::string>(term).empty()) {
      throw ChainError("empty parameter name in coupling list");
    }
  }
  int prev = 0;
  for (int node : spec.register_nodes) {
    if (node < 1 || static_cast<std::size_t>(node) > spec.n_nodes)
      throw ChainError("register node " + std::to_string(node) + " outside [1, N]");
    if (node <= prev) throw ChainError("register nodes must be strictly increasing");
    prev = node;
  }
  for (const auto& [name, value] : spec.parameters)
    if (!(value > 0.0) || !std::isfinite(value))
      throw ChainError("parameter '" + name + "' must be positive");
  if (spec.symmetric) {
    const std::size_t m = spec.nn_couplings.size();
    for (std::size_t i = 0; i < m / 2; ++i) {
      if (spec.nn_couplings[i] != spec.nn_couplings[m - 1 - i])
        throw ChainError("chain flagged symmetric but D_" + std::to_string(i + 1) + " = " +
                         describe(spec.nn_couplings[i]) + " differs from D_" + std::to_string(m - i) + " = " +
                         describe(spec.nn_couplings[m - 1 - i]));
    }
  }
}

ChainSpec resolve_parameters(const ChainSpec& spec, const Bindings& bindings) {
  validate(spec);
  for (const auto& [name, value] : bindings)
    if (!(value > 0.0) || !std::isfinite(value))
      throw ChainError("binding for '" + name + "' must be positive");

  ChainSpec out = spec;
  for (auto& term : out.nn_couplings) {
    const auto* name = std::get_if<std::string>(&term);
    if (name == nullptr) continue;
    double value = 0.0;
    if (auto it = bindings.find(*name); it != bindings.end()) {
      value = it->second;
    } else if (auto jt = spec.parameters.find(*name); jt != spec.parameters.end()) {
      value = jt->second;
    } else {
      throw ChainError("no binding for parameter '" + *name + "'");
    }
    out.parameters[*name] = value;
    term = value;
  }
  validate(out);
  return out;
}

Geometry positions_from_couplings(const ChainSpec& spec) {
  validate(spec);
  const std::vector<double> couplings = spec.numeric_couplings();
  Geometry g;
  g.positions.reserve(spec.n_nodes);
  g.positions.push_back(0.0);
  for (double d : couplings) {
    g.positions.push_back(g.positions.back() + std::cbrt(1.0 / d));
  }
  return g;
}

CouplingMatrix full_coupling_matrix(const Geometry& geom) {
  const auto& x = geom.positions;
  if (x.size() < 2) throw ChainError("geometry needs at least two nodes");
  if (x.front() != 0.0) throw ChainError("geometry must start at x_1 = 0");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw ChainError("coincident or unordered node positions");

  const std::size_t n = x.size();
  CouplingMatrix c{Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = x[j] - x[i];
      const double v = 1.0 / (r * r * r);
      c.d(i, j) = v;
      c.d(j, i) = v;
    }
  return c;
}

}  // namespace hpst
